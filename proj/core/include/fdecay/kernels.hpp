#pragma once

#include <span>
#include <variant>

namespace fdecay {

// Heat kernel (4 pi t)^{-d/2} exp(-|x|^2 / 4t), d = x.size().
double heat_kernel(std::span<const double> x, double t);
double heat_kernel_radial(double r, double t, int d);

// exp(-4 pi^2 t |xi|^2)
double heat_symbol(std::span<const double> xi, double t);
double heat_symbol_radial(double r, double t);

// (2 pi |xi|)^{-alpha}; throws ZeroFrequency at xi = 0.
double riesz_symbol(std::span<const double> xi, double alpha);
double riesz_symbol_radial(double r, double alpha);

// (2 pi |xi|)^{eta}
double frac_laplacian_symbol(std::span<const double> xi, double eta);
double frac_laplacian_symbol_radial(double r, double eta);

// nu = twice_nu / 2
struct BesselOrder {
  int twice_nu = 0;

  static constexpr BesselOrder integer(int n) { return {2 * n}; }
  static constexpr BesselOrder half(int m) { return {m}; }
  // order (k-1)/2 attached to the k-sphere
  static constexpr BesselOrder for_sphere(int k) { return {k - 1}; }

  double nu() const { return 0.5 * twice_nu; }
  bool half_integer() const { return twice_nu % 2 != 0; }
};

// J_nu(x), x >= 0. Series / recurrences up to x = 50, asymptotic beyond.
double bessel_j(BesselOrder nu, double x);
// The two branches, exposed so the crossover can be checked.
double bessel_j_near(BesselOrder nu, double x);
double bessel_j_far(BesselOrder nu, double x);

// sqrt(2/(pi x)) cos(x - pi nu/2 - pi/4)
double bessel_leading(BesselOrder nu, double x);
// J_nu(x) minus the leading term; x >= 1.
double bessel_remainder(BesselOrder nu, double x);

struct IntegerOrder {
  int k;
};
struct FractionalOrder {
  double eta;
};
using DerivativeOrder = std::variant<IntegerOrder, FractionalOrder>;

// L1 mass of nabla^k p_t (Frobenius norm of the derivative tensor) or of
// (-Delta)^{eta/2} p_t.
double kernel_derivative_mass(double t, DerivativeOrder order, int d);

// Surface area of the unit sphere in R^d and volume of the unit ball.
double sphere_area(int d);
double ball_volume(int d);

// Fourier transform of the indicator of the ball B(0,R) at |xi| = r.
double ball_indicator_ft(double r, double R, int d);

}  // namespace fdecay
