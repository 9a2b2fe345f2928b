#include "fdecay/parameters.hpp"

#include <cmath>
#include <sstream>

#include "fdecay/errors.hpp"

namespace fdecay {

double weak_exponent(int d, double alpha, double beta) { return 2.0 * d / (2.0 * alpha + beta); }

bool Parameters::admissible() const { return alpha > alpha_lower() && alpha < alpha_upper(); }

void check_alpha_range(int d, double alpha, double beta) {
  const double lo = 0.5 * (d - beta), hi = d - 0.5 * beta;
  if (!(alpha > lo && alpha < hi)) {
    std::ostringstream os;
    os << "alpha=" << alpha << " outside (" << lo << ", " << hi << ") for d=" << d << ", beta=" << beta;
    fail(Errc::AlphaOutOfRange, os.str());
  }
}

Parameters validate_parameters(Parameters p) {
  if (p.d < 1) fail(Errc::DimensionMismatch, "d must be positive");
  if (!(p.beta > 0 && p.beta <= p.d)) {
    std::ostringstream os;
    os << "beta=" << p.beta << " outside (0, " << p.d << "]";
    fail(Errc::BetaOutOfRange, os.str());
  }
  check_alpha_range(p.d, p.alpha, p.beta);
  if (p.eta && !(*p.eta > 0 && *p.eta < 1)) fail(Errc::InvalidArgument, "eta must lie in (0,1)");
  if (p.q && !(*p.q > 0)) fail(Errc::InvalidArgument, "q must be positive");
  p.p_weak = weak_exponent(p.d, p.alpha, p.beta);
  return p;
}

}  // namespace fdecay
