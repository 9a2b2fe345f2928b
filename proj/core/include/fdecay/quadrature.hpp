#pragma once

#include <functional>
#include <vector>

namespace fdecay {

struct QuadResult {
  double value = 0;
  double error = 0;
  int intervals = 0;
};

using RealFn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod 7/15. Throws QuadratureNotConverged when
// the error estimate stays above max(abs_tol, rel_tol*|I|).
QuadResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, int max_intervals = 4000);

double integrate(const RealFn& f, double a, double b, double abs_tol = 1e-10,
                 double rel_tol = 1e-10);

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Cached Gauss-Legendre rule with n nodes.
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre on [a,b]: `panels` panels with n nodes each.
double integrate_composite(const RealFn& f, double a, double b, int panels, int n = 16);

}  // namespace fdecay
