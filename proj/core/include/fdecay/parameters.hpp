#pragma once

#include <optional>

namespace fdecay {

struct Parameters {
  int d = 1;
  double alpha = 0.5;
  double beta = 1.0;
  double p_weak = 0.0;             // recomputed by validate_parameters
  std::optional<double> q;         // +inf allowed
  std::optional<double> eta;

  // (d - beta)/2 and d - beta/2
  double alpha_lower() const { return 0.5 * (d - beta); }
  double alpha_upper() const { return d - 0.5 * beta; }
  bool admissible() const;
};

double weak_exponent(int d, double alpha, double beta);

// Throws AlphaOutOfRange / BetaOutOfRange.
Parameters validate_parameters(Parameters p);

// Same alpha window but beta = 0 allowed (point masses).
void check_alpha_range(int d, double alpha, double beta);

}  // namespace fdecay
