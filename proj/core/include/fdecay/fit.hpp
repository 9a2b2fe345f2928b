#pragma once

#include <span>

namespace fdecay {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
  // sqrt(1 - R^2); 0 for a perfect line
  double residual = 0;
  // root mean square of y - (slope x + intercept)
  double rms = 0;
  int n = 0;
};

// Ordinary least squares; needs at least two distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);
// Fit of log y against log x (natural logs); all values must be positive.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace fdecay
