#include "fdecay/kernels.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "fdecay/errors.hpp"
#include "fdecay/measure.hpp"
#include "fdecay/quadrature.hpp"

namespace fdecay {

namespace {

constexpr double pi = std::numbers::pi;

void check_time(double t) {
  if (!(t > 0)) fail(Errc::NonpositiveTime, "heat time must be positive");
}

double norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

double heat_kernel(std::span<const double> x, double t) {
  check_time(t);
  const int d = static_cast<int>(x.size());
  return std::pow(4 * pi * t, -0.5 * d) * std::exp(-norm2(x) / (4 * t));
}

double heat_kernel_radial(double r, double t, int d) {
  check_time(t);
  return std::pow(4 * pi * t, -0.5 * d) * std::exp(-r * r / (4 * t));
}

double heat_symbol(std::span<const double> xi, double t) {
  check_time(t);
  return std::exp(-4 * pi * pi * t * norm2(xi));
}

double heat_symbol_radial(double r, double t) {
  check_time(t);
  return std::exp(-4 * pi * pi * t * r * r);
}

double riesz_symbol(std::span<const double> xi, double alpha) {
  return riesz_symbol_radial(std::sqrt(norm2(xi)), alpha);
}

double riesz_symbol_radial(double r, double alpha) {
  if (r == 0.0) fail(Errc::ZeroFrequency, "Riesz symbol is singular at the origin");
  return std::pow(2 * pi * r, -alpha);
}

double frac_laplacian_symbol(std::span<const double> xi, double eta) {
  return frac_laplacian_symbol_radial(std::sqrt(norm2(xi)), eta);
}

double frac_laplacian_symbol_radial(double r, double eta) {
  if (r == 0.0) return 0.0;
  return std::pow(2 * pi * r, eta);
}

double sphere_area(int d) { return 2 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d); }

double ball_volume(int d) { return std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1); }

double ball_indicator_ft(double r, double R, int d) {
  const double z = 2 * pi * R * r;
  if (z < 1e-8) return ball_volume(d) * std::pow(R, d) * (1 - z * z / (2.0 * d + 4));
  if (d == 1) return std::sin(z) / (pi * r);
  return std::pow(R / r, 0.5 * d) * bessel_j(BesselOrder::half(d), z);
}

namespace {

// probabilists' Hermite He_m(u)
double hermite(int m, double u) {
  double h0 = 1, h1 = u;
  if (m == 0) return h0;
  for (int k = 1; k < m; ++k) {
    const double h2 = u * h1 - k * h0;
    h0 = h1, h1 = h2;
  }
  return h1;
}

void compositions(int k, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= k; ++a) {
    cur.push_back(a);
    compositions(k - a, d, cur, out);
    cur.pop_back();
  }
}

double integer_mass(double t, int k, int d) {
  if (k < 0) fail(Errc::InvalidArgument, "negative derivative order");
  const double sigma = std::sqrt(2 * t);
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur;
  compositions(k, d, cur, alphas);
  std::vector<double> coef;  // multinomial k!/alpha!
  for (const auto& a : alphas) {
    double c = std::tgamma(k + 1.0);
    for (int m : a) c /= std::tgamma(m + 1.0);
    coef.push_back(c);
  }
  const double g0 = 1 / std::sqrt(2 * pi * sigma * sigma);
  // derivative of the 1-d Gaussian, order m, at 0 (others axes)
  auto deriv = [&](int m, double x) {
    const double u = x / sigma;
    return (m % 2 ? -1.0 : 1.0) * std::pow(sigma, -m) * hermite(m, u) * g0 * std::exp(-0.5 * u * u);
  };
  auto frob = [&](double r) {
    double s = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      double prod = deriv(alphas[i][0], r);
      for (int j = 1; j < d; ++j) prod *= deriv(alphas[i][j], 0.0);
      s += coef[i] * prod * prod;
    }
    return std::sqrt(s) * std::pow(r, d - 1);
  };
  const double scale = std::pow(t, -0.5 * k);
  const double cut = 40 * sigma;
  double total = 0;
  // panel boundaries at multiples of sigma keep the kinks local
  for (int p = 0; p < 40; ++p)
    total += integrate_adaptive(frob, p * sigma, std::min(cut, (p + 1) * sigma), 1e-14 * scale, 1e-11)
                 .value;
  return sphere_area(d) * total;
}

double fractional_mass(double t, double eta, int d) {
  if (!(eta > 0 && eta < d)) fail(Errc::InvalidArgument, "fractional order must lie in (0, d)");
  const double rho_max = std::sqrt(50 / (4 * pi * pi * t));
  auto F = [&](double rho) { return std::pow(2 * pi * rho, eta) * std::exp(-4 * pi * pi * t * rho * rho); };
  const double area = sphere_area(d);
  const double f0 = area * integrate([&](double rho) { return F(rho) * std::pow(rho, d - 1); }, 0, rho_max,
                                     0.0, 1e-12);
  const double atol = 1e-13 * f0;

  // radial profile of the inverse transform
  auto f = [&](double r) {
    std::function<double(double)> g;
    if (d == 1) {
      g = [&](double rho) { return 2 * F(rho) * std::cos(2 * pi * r * rho); };
    } else if (d == 3) {
      g = [&](double rho) { return 2 * F(rho) * std::sin(2 * pi * r * rho) * rho / r; };
    } else {
      g = [&](double rho) {
        return 2 * pi * std::pow(r, 1 - 0.5 * d) * F(rho) *
               bessel_j(BesselOrder::integer(d / 2 - 1), 2 * pi * r * rho) * std::pow(rho, 0.5 * d);
      };
    }
    return integrate_adaptive(g, 0, rho_max, atol, 1e-11).value;
  };
  // mass of f over the ball B(0, R), through the ball transform
  auto ball_mass = [&](double R) {
    auto g = [&](double rho) { return area * F(rho) * ball_indicator_ft(rho, R, d) * std::pow(rho, d - 1); };
    return integrate_adaptive(g, 0, rho_max, atol, 1e-11).value;
  };

  const double s = std::sqrt(t);
  const double h = s / 20;
  std::vector<double> roots;
  double r_prev = 0.5 * h, f_prev = f(r_prev);
  for (int i = 1; i < 160; ++i) {
    const double r = (i + 0.5) * h, fr = f(r);
    if ((fr > 0) != (f_prev > 0) && std::max(std::abs(fr), std::abs(f_prev)) > 1e-10 * f0) {
      double a = r_prev, b = r, fa = f_prev;
      for (int it = 0; it < 60 && b - a > 1e-13 * s; ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm > 0) == (fa > 0)) a = m, fa = fm;
        else b = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    r_prev = r, f_prev = fr;
  }
  if (roots.empty()) fail(Errc::QuadratureNotConverged, "no sign change found in the fractional kernel");
  double mass = 0, prev = 0;
  for (double r : roots) {
    const double I = ball_mass(r);
    mass += std::abs(I - prev);
    prev = I;
  }
  mass += std::abs(prev);  // total integral is zero for eta > 0
  return mass;
}

}  // namespace

double kernel_derivative_mass(double t, DerivativeOrder order, int d) {
  check_time(t);
  if (d < 1 || d > kMaxDim) fail(Errc::DimensionMismatch, "dimension");
  if (auto* k = std::get_if<IntegerOrder>(&order)) return integer_mass(t, k->k, d);
  return fractional_mass(t, std::get<FractionalOrder>(order).eta, d);
}

}  // namespace fdecay
