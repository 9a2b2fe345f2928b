#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "fdecay/errors.hpp"
#include "fdecay/experiments.hpp"
#include "fdecay/kernels.hpp"

using namespace fdecay;

namespace {

constexpr double pi = std::numbers::pi;

// plain trapezoid, kept separate from the library quadrature
double trap(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

// J_n(x) = (1/pi) int_0^pi cos(n tau - x sin tau) dtau; periodic, so the trapezoid is spectral
double bessel_integral(int n, double x) {
  return trap([&](double tau) { return std::cos(n * tau - x * std::sin(tau)); }, 0, pi, 4000) / pi;
}

double j_half(int m, double x) {
  const double c = std::sqrt(2 / (pi * x));
  const double s = std::sin(x), co = std::cos(x);
  switch (m) {
    case 1: return c * s;
    case 3: return c * (s / x - co);
    case 5: return c * ((3 / (x * x) - 1) * s - 3 * co / x);
  }
  return 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("heat kernel has unit mass") {
  for (double t : {1e-3, 0.1, 1.0, 7.0}) {
    const double L = 12 * std::sqrt(t);
    const double m1 = trap([&](double x) { return heat_kernel_radial(std::abs(x), t, 1); }, -L, L, 4000);
    double m2 = 0;  // plain grid sum over the plane
    const int n = 600;
    const double h = 2 * L / n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m2 += heat_kernel_radial(std::hypot(-L + (i + 0.5) * h, -L + (j + 0.5) * h), t, 2);
    m2 *= h * h;
    const double m3 = trap([&](double r) { return 4 * pi * r * r * heat_kernel_radial(r, t, 3); }, 0, L, 4000);
    CHECK(std::abs(m1 - 1) < 1e-10);
    CHECK(std::abs(m2 - 1) < 1e-10);
    CHECK(std::abs(m3 - 1) < 1e-10);
  }
  const double x[] = {0.3, -0.4};
  CHECK(heat_kernel(x, 0.5) == doctest::Approx(heat_kernel_radial(0.5, 0.5, 2)).epsilon(1e-14));
  CHECK_THROWS_AS(heat_kernel(x, 0.0), Error);
}

TEST_CASE("heat semigroup in space and on the symbol") {
  const double t = 0.3, s = 0.7;
  for (double x : {0.0, 0.5, 1.7, 3.0}) {
    const double conv = trap([&](double y) {
      return heat_kernel_radial(std::abs(x - y), t, 1) * heat_kernel_radial(std::abs(y), s, 1);
    }, -20, 20, 8000);
    CHECK(std::abs(conv - heat_kernel_radial(x, t + s, 1)) < 1e-10);
  }
  for (double r : {0.0, 0.2, 1.0}) CHECK(std::abs(heat_symbol_radial(r, t) * heat_symbol_radial(r, s) - heat_symbol_radial(r, t + s)) < 1e-15);
}

TEST_CASE("riesz and fractional symbols") {
  const double xi[] = {0.6, 0.8};
  CHECK(riesz_symbol(xi, 1.5) == doctest::Approx(std::pow(2 * pi, -1.5)));
  CHECK(frac_laplacian_symbol(xi, 0.5) == doctest::Approx(std::sqrt(2 * pi)));
  const double zero[] = {0.0, 0.0};
  CHECK_THROWS_AS(riesz_symbol(zero, 1.0), Error);
}

TEST_CASE("sphere area and ball volume") {
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(ball_volume(1) == doctest::Approx(2.0));
  CHECK(ball_volume(3) == doctest::Approx(4 * pi / 3));
  CHECK(ball_volume(4) == doctest::Approx(pi * pi / 2));
}

TEST_CASE("bessel half-integer orders match the elementary forms") {
  double worst = 0;
  for (int m : {1, 3, 5})
    for (double x = 0.1; x <= 100; x *= 1.01)
      worst = std::max(worst, std::abs(bessel_j(BesselOrder::half(m), x) - j_half(m, x)));
  CHECK(worst < 1e-12);
}

TEST_CASE("bessel integer orders match the integral representation") {
  double worst = 0;
  for (int n : {0, 1, 2, 5})
    for (double x = 0.05; x <= 120; x *= 1.05)
      worst = std::max(worst, std::abs(bessel_j(BesselOrder::integer(n), x) - bessel_integral(n, x)));
  CHECK(worst < 1e-10);
  CHECK(bessel_j(BesselOrder::integer(0), 0) == doctest::Approx(1.0));
  CHECK(bessel_j(BesselOrder::integer(1), 0) == doctest::Approx(0.0));
}

TEST_CASE("near and far branches agree at the crossover") {
  for (int twice : {0, 1, 2, 3})
    for (double x : {45.0, 50.0, 55.0})
      CHECK(std::abs(bessel_j_near({twice}, x) - bessel_j_far({twice}, x)) < 1e-12);
}

TEST_CASE("remainder after the leading term decays like x^{-3/2}") {
  for (int twice : {0, 1, 2, 3}) {
    const BesselOrder nu{twice};
    const double amp = std::abs(4 * nu.nu() * nu.nu() - 1) / 8 * std::sqrt(2 / pi);
    const double C = bessel_remainder_constant(nu, 1, 1e4);
    CHECK(std::isfinite(C));
    if (twice == 1) {
      CHECK(C < 1e-12);  // J_{1/2} is its own leading term
      continue;
    }
    // far out |R| x^{3/2} oscillates with the next asymptotic amplitude
    const double tail = bessel_remainder_constant(nu, 1e3, 1e4);
    CHECK(tail == doctest::Approx(amp).epsilon(0.02));
    CHECK(C < 4 * amp + 0.5);
  }
  CHECK_THROWS_AS(bessel_remainder(BesselOrder::integer(0), 0.5), Error);
}

TEST_CASE("derivative masses against Gaussian closed forms") {
  for (double t : {0.01, 1.0, 25.0}) {
    // d = 1: int |p_t'| = 2 p_t(0)
    CHECK(kernel_derivative_mass(t, IntegerOrder{1}, 1) == doctest::Approx(1 / std::sqrt(pi * t)).epsilon(1e-8));
    // d = 2: int |grad p_t| = E|X| / 2t with X ~ N(0, 2t I)
    CHECK(kernel_derivative_mass(t, IntegerOrder{1}, 2) == doctest::Approx(std::sqrt(pi) / (2 * std::sqrt(t))).epsilon(1e-8));
    // d = 1, k = 2 by direct quadrature of |p''|
    const double L = 14 * std::sqrt(t);
    const double m2 = trap([&](double x) {
      return std::abs((x * x / (4 * t * t) - 1 / (2 * t)) * heat_kernel_radial(std::abs(x), t, 1));
    }, -L, L, 20000);
    CHECK(kernel_derivative_mass(t, IntegerOrder{2}, 1) == doctest::Approx(m2).epsilon(1e-6));
  }
  // (-Delta)^{eta/2} p_t has mass c t^{-eta/2}
  for (double eta : {0.3, 0.5, 0.9}) {
    const double a = kernel_derivative_mass(0.5, FractionalOrder{eta}, 1);
    const double b = kernel_derivative_mass(2.0, FractionalOrder{eta}, 1);
    CHECK(b / a == doctest::Approx(std::pow(4.0, -eta / 2)).epsilon(1e-6));
  }
}

TEST_CASE("fractional mass against a direct inverse transform") {
  const double t = 1.0, eta = 0.5, X = 200;
  // f(x) = 2 int_0^inf (2 pi xi)^eta exp(-4 pi^2 t xi^2) cos(2 pi x xi) dxi, xi = u^2 to tame the cusp
  auto f = [&](double x) {
    return trap([&](double u) {
      const double xi = u * u;
      return 2 * std::pow(2 * pi * xi, eta) * std::exp(-4 * pi * pi * t * xi * xi) * std::cos(2 * pi * x * xi) * 2 * u;
    }, 0, 1.2, 6000);
  };
  // beyond X, f ~ -c |x|^{-1-eta} with the fractional Laplacian kernel constant c
  const double c = std::pow(2, eta) * std::tgamma(0.5 * (1 + eta)) / (std::sqrt(pi) * std::abs(std::tgamma(-0.5 * eta)));
  const double direct = 2 * (trap([&](double x) { return std::abs(f(x)); }, 0, X, 20000) + c * std::pow(X, -eta) / eta);
  CHECK(kernel_derivative_mass(t, FractionalOrder{eta}, 1) == doctest::Approx(direct).epsilon(2e-3));
}

TEST_CASE("ball indicator transform") {
  for (double r : {0.1, 0.7, 2.3}) {
    CHECK(ball_indicator_ft(r, 1.5, 1) == doctest::Approx(std::sin(2 * pi * r * 1.5) / (pi * r)).epsilon(1e-12));
    // disc by x = R sin(theta)
    const double R = 1.5;
    const double direct = trap([&](double th) {
      return std::cos(2 * pi * r * R * std::sin(th)) * 2 * R * R * std::cos(th) * std::cos(th);
    }, -pi / 2, pi / 2, 4000);
    CHECK(ball_indicator_ft(r, R, 2) == doctest::Approx(direct).epsilon(1e-8));
  }
  CHECK(ball_indicator_ft(0, 2, 3) == doctest::Approx(ball_volume(3) * 8));
}

}  // TEST_SUITE
