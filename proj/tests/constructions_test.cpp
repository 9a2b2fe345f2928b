#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fdecay/constructions.hpp"
#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/norms.hpp"
#include "fdecay/transforms.hpp"

using namespace fdecay;

namespace {

constexpr double pi = std::numbers::pi;

double trap(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

double j0_integral(double x) {
  return trap([&](double tau) { return std::cos(x * std::sin(tau)); }, 0, pi, 4000) / pi;
}

const BumpProfile& bump() {
  static BumpProfile B;
  return B;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("sphere measures carry the surface area") {
  CHECK(total_variation(sphere_measure(1, 2, 256)) == doctest::Approx(2 * pi));
  CHECK(total_variation(sphere_measure(2, 3, 500)) == doctest::Approx(4 * pi));
  CHECK(total_variation(sphere_measure(3, 4, 2000)) == doctest::Approx(2 * pi * pi).epsilon(1e-9));
  auto s = sphere_measure(1, 3, 64);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.location(i)[2] == 0.0);
    CHECK(norm(s.location(i)) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(sphere_measure(3, 3, 100), Error);
  CHECK_THROWS_AS(sphere_measure(1, 2, 10), Error);
}

TEST_CASE("circle transform matches 2 pi J0 from the integral representation") {
  auto mu = sphere_measure(1, 2, 4096);
  double worst = 0;
  for (double R = 0.25; R <= 32; R += 0.75) {
    const double xi[] = {R, 0.0};
    worst = std::max(worst, std::abs(fourier_transform_atomic(mu, xi) - 2 * pi * j0_integral(2 * pi * R)));
  }
  CHECK(worst < 1e-6);
  const double xi[] = {0.3, 0.4};
  CHECK(sphere_ft(1, xi) == doctest::Approx(2 * pi * j0_integral(pi)).epsilon(1e-10));
}

TEST_CASE("two-sphere transform is 2 sin(2 pi r) / r") {
  for (double r : {0.3, 1.7, 9.2}) CHECK(sphere_ft_radial(2, r) == doctest::Approx(2 * std::sin(2 * pi * r) / r).epsilon(1e-12));
  auto mu = sphere_measure(2, 3, 20000);
  const double xi[] = {0.0, 0.6, 0.8};
  CHECK(std::abs(fourier_transform_atomic(mu, xi).real() - sphere_ft(2, xi)) < 2e-3);
}

TEST_CASE("circle quadrature error falls fast as atoms double") {
  // the n-point rule is exact until 2 pi R nears the order n
  const double xi[] = {10.0, 0.0};
  const double exact = sphere_ft(1, xi);
  const double e1 = std::abs(fourier_transform_atomic(sphere_measure(1, 2, 64), xi) - exact);
  const double e2 = std::abs(fourier_transform_atomic(sphere_measure(1, 2, 128), xi) - exact);
  CHECK(e2 < 1e-10);
  CHECK(e1 > 1e-4);
  CHECK(e2 < 1e-6 * e1);
}

TEST_CASE("cantor measure: first level, mass and transform") {
  auto c1 = cantor_measure(1);
  REQUIRE(c1.size() == 2);
  CHECK(c1.location(0)[0] == doctest::Approx(1.0 / 6));
  CHECK(c1.location(1)[0] == doctest::Approx(5.0 / 6));
  CHECK(std::abs(c1.weight(0) - 0.5) < 1e-15);
  for (int L : {3, 8, 12}) CHECK(total_variation(cantor_measure(L)) == doctest::Approx(1.0).epsilon(1e-12));
  auto c8 = cantor_measure(8, 0.3);
  for (double xi : {0.7, 13.0, 250.0}) {
    const double x[] = {xi};
    CHECK(std::abs(fourier_transform_atomic(c8, x) - cantor_ft(8, 0.3, xi)) < 1e-10);
  }
  CHECK_THROWS_AS(cantor_measure(21), Error);
}

TEST_CASE("cantor transform recursion") {
  // one step of self-similarity: mu_L^(xi) = e^{-i pi xi (1-r)} cos(pi xi (1-r)) mu_{L-1}^(r xi)
  const double r = 1.0 / 3;
  for (double xi : {0.37, 5.0, 81.5}) {
    const cplx lhs = cantor_ft(9, r, xi);
    const cplx step = std::exp(cplx(0, -pi * xi * (1 - r))) * std::cos(pi * xi * (1 - r));
    const cplx rhs = step * cantor_ft(8, r, r * xi);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("indicator sets: volumes, perimeters, dilation") {
  auto sq = IndicatorSet::cube(2, 1.0);
  CHECK(sq.volume() == doctest::Approx(1.0));
  CHECK(sq.perimeter() == doctest::Approx(4.0));
  auto b = IndicatorSet::ball(Point{0.0, 0.0}, 1.0);
  CHECK(b.perimeter() == doctest::Approx(2 * pi));
  CHECK(b.dilated(3).volume() == doctest::Approx(9 * pi));
  CHECK(IndicatorSet::ball(Point{0.0, 0.0, 0.0}, 2.0).perimeter() == doctest::Approx(16 * pi));
  CHECK(sq.contains(std::vector<double>{0.5, 0.5}));
  CHECK_FALSE(sq.contains(std::vector<double>{1.5, 0.5}));
}

TEST_CASE("boundary measures: perimeter and the divergence identity") {
  auto sq = indicator_boundary_measure(IndicatorSet::cube(2, 1.0), 400);
  CHECK(total_variation(sq) == doctest::Approx(4.0).epsilon(1e-12));
  auto disc = indicator_boundary_measure(IndicatorSet::ball(Point{0.5, 0.0}, 1.0), 400);
  CHECK(total_variation(disc) == doctest::Approx(2 * pi).epsilon(1e-12));
  for (const auto* nu : {&sq, &disc})
    for (cplx w : nu->total_weight()) CHECK(std::abs(w) < 1e-10);
  auto seg = indicator_boundary_measure(IndicatorSet::interval(0, 2), 2);
  CHECK(seg.size() == 2);
}

TEST_CASE("indicator transforms") {
  auto I = IndicatorSet::interval(-0.5, 0.5);
  for (double xi : {0.1, 0.5, 2.3}) {
    const double x[] = {xi};
    CHECK(std::abs(indicator_ft(I, x) - std::sin(pi * xi) / (pi * xi)) < 1e-14);
  }
  auto sq = IndicatorSet::box(Point{0.0, 0.0}, Point{2.0, 1.0});
  const double zero[] = {0.0, 0.0};
  CHECK(std::abs(indicator_ft(sq, zero) - 2.0) < 1e-14);
  auto ball = IndicatorSet::ball(Point{1.0, 0.0}, 1.5);
  CHECK(std::abs(indicator_ft(ball, zero) - 2.25 * pi) < 1e-12);
  const double xi[] = {0.4, -0.3};
  CHECK(std::abs(indicator_ft(ball, xi)) == doctest::Approx(std::abs(ball_indicator_ft(0.5, 1.5, 2))).epsilon(1e-12));
  CHECK(indicator_ft_modulus(sq, xi) == doctest::Approx(std::abs(indicator_ft(sq, xi))).epsilon(1e-12));
}

TEST_CASE("indicator transform against dense atoms") {
  for (auto E : {IndicatorSet::box(Point{0.0, 0.0}, Point{1.0, 0.5}), IndicatorSet::ball(Point{0.0, 0.0}, 0.6)}) {
    auto atoms = indicator_atoms(E, 1.0 / 512);
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(-8 / std::sqrt(2.0), 8 / std::sqrt(2.0));
    double worst = 0;
    for (int i = 0; i < 40; ++i) {
      const double xi[] = {u(g), u(g)};
      worst = std::max(worst, std::abs(fourier_transform_atomic(atoms, xi) - indicator_ft(E, xi)));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("indicator transform is dominated by the order-one Riesz field of its boundary") {
  auto E = IndicatorSet::cube(2, 1.0);
  auto D = indicator_boundary_measure(E, 4000);
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(-10, 10);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double xi[] = {u(g), u(g)};
    const double r = norm(xi);
    double s = 0;
    for (int k = 0; k < 2; ++k) s += std::norm(fourier_transform_atomic(D.component(k), xi));
    // |I_1 D chi^| = (2 pi |xi|)^{-1} |D chi^|; the quadrature error is ~1e-6 at 4000 atoms
    bad += std::abs(indicator_ft(E, xi)) > std::sqrt(s) / (2 * pi * r) + 1e-5;
  }
  CHECK(bad == 0);
}

TEST_CASE("bump plateau") {
  CHECK(BumpProfile::hat(0) == 1.0);
  CHECK(BumpProfile::hat(2) == 1.0);
  CHECK(BumpProfile::hat(4) == 0.0);
  CHECK(BumpProfile::hat(5) == 0.0);
  double prev = 1;
  for (double r = 2; r <= 4; r += 0.01) {
    CHECK(BumpProfile::hat(r) <= prev);
    prev = BumpProfile::hat(r);
  }
  CHECK((BumpProfile::hat(3) > 0 && BumpProfile::hat(3) < 1));
}

TEST_CASE("bump profile is the inverse transform of the plateau") {
  for (double r : {0.0, 0.13, 1.0, 2.7}) {
    // d = 1: 2 int_0^4 hat cos(2 pi r xi); d = 2: 2 pi int_0^4 hat J0(2 pi r rho) rho
    const double d1 = 2 * trap([&](double x) { return BumpProfile::hat(x) * std::cos(2 * pi * r * x); }, 0, 4, 8000);
    const double d2 = 2 * pi * trap([&](double x) { return BumpProfile::hat(x) * j0_integral(2 * pi * r * x) * x; }, 0, 4, 2000);
    CHECK(bump().phi(r, 1) == doctest::Approx(d1).epsilon(1e-6).scale(bump().phi(0, 1)));
    CHECK(bump().phi(r, 2) == doctest::Approx(d2).epsilon(1e-5).scale(bump().phi(0, 2)));
  }
}

TEST_CASE("atomized bump reproduces the plateau") {
  for (int d : {1, 2}) {
    auto phi = bump_phi(bump(), d);
    double worst = 0;
    for (double r = 0; r <= 8; r += 0.125) {
      Point xi(d);
      xi[0] = r / std::sqrt(static_cast<double>(d));
      if (d == 2) xi[1] = xi[0];
      worst = std::max(worst, std::abs(fourier_transform_atomic(phi, xi) - BumpProfile::hat(r)));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("bump family: scaling and modulus on U_N") {
  const double beta = 0.5;
  for (double N : {1.0, 4.0}) {
    auto f = bump_family(bump(), 1, N, Point{3.0}, beta);
    CHECK(total_variation(f) == doctest::Approx(std::pow(N, -beta) * total_variation(bump_phi(bump(), 1))).epsilon(1e-12));
    for (double xi : {N, 1.5 * N, 2 * N}) {
      const double x[] = {xi};
      CHECK(std::abs(fourier_transform_atomic(f, x)) == doctest::Approx(std::pow(N, -beta)).epsilon(1e-3));
    }
  }
  auto one = bump_family(bump(), 1, 1.0, Point{0.0}, 0.7);
  auto phi = bump_phi(bump(), 1);
  REQUIRE(one.size() == phi.size());
  CHECK(std::abs(one.weight(3) - phi.weight(3)) < 1e-15);
}

TEST_CASE("rademacher sums: count, determinism, mass bound") {
  CHECK(bump_count(16, 0.5) == 4);
  CHECK(bump_count(27, 1.0 / 3) == 3);
  auto a = rademacher_layout(bump(), 1, 16, 0.5, 16, 42);
  auto b = rademacher_layout(bump(), 1, 16, 0.5, 16, 42);
  auto c = rademacher_layout(bump(), 1, 16, 0.5, 16, 43);
  CHECK(a.signs == b.signs);
  CHECK(a.terms() == 4);
  for (std::size_t i = 0; i < a.terms(); ++i) CHECK(a.translates[i][0] == c.translates[i][0]);
  const double phi1 = total_variation(bump_phi(bump(), 1));
  CHECK(total_variation(rademacher_sum(bump(), 1, 16, 0.5, 16, 42)) <= phi1 * (1 + 1e-12));
  auto single = rademacher_layout(bump(), 1, 1.5, 0.5, 16, 1);
  CHECK(single.terms() == 1);
}

TEST_CASE("analytic transform of the layout matches the atoms") {
  for (int d : {1, 2}) {
    auto L = rademacher_layout(bump(), d, 4, 1.0, 16, 5);
    auto mu = L.to_measure(bump());
    for (double r : {4.0, 5.5, 7.9}) {
      Point xi(d);
      xi[0] = r * 0.8;
      if (d == 2) xi[1] = r * 0.6;
      CHECK(std::abs(L.analytic_ft(xi) - fourier_transform_atomic(mu, xi)) < 1e-3 * std::pow(4.0, -1.0) * L.terms());
    }
  }
}

TEST_CASE("Khintchine: mean of |Phi_N^|^2 over seeds is M N^{-2 beta}") {
  const double N = 16, beta = 0.75;
  const long M = bump_count(N, beta);
  const double xi[] = {1.3 * N};
  std::vector<double> v;
  for (std::uint64_t s = 1; s <= 32; ++s) v.push_back(std::norm(rademacher_layout(bump(), 1, N, beta, 16, s).analytic_ft(xi)));
  double mean = 0, var = 0;
  for (double x : v) mean += x / v.size();
  for (double x : v) var += (x - mean) * (x - mean) / (v.size() - 1);
  const double expect = M * std::pow(N, -2 * beta);
  CHECK(std::abs(mean - expect) <= 3 * std::sqrt(var / v.size()));
}

TEST_CASE("Besov norm of the bump stays bounded across beta") {
  auto phi = bump_phi(bump(), 1);
  double top = 0;
  for (double beta : {0.25, 0.5, 0.75, 1.0}) top = std::max(top, besov_norm(phi, beta, resolved_time_grid(phi)));
  CHECK(std::isfinite(top));
  CHECK(top < 10);
}

}  // TEST_SUITE
