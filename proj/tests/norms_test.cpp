#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fdecay/constructions.hpp"
#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/norms.hpp"

using namespace fdecay;

namespace {

constexpr double pi = std::numbers::pi;

SampledField steps(std::initializer_list<std::pair<double, double>> vals) {
  SampledField F(1, 1.0);
  double x = 0;
  for (auto [v, vol] : vals) {
    const double p[] = {x += 1};
    F.push(p, v, vol);
  }
  return F;
}

SampledField constant_field(double c, std::size_t n, double cell) {
  SampledField F(1, cell);
  for (std::size_t i = 0; i < n; ++i) {
    const double p[] = {static_cast<double>(i)};
    F.push(p, c);
  }
  return F;
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("time grid is geometric and its refinement contains it") {
  TimeGrid G{1e-3, 1.0, 2.0};
  const auto t = G.times();
  CHECK(t.front() == doctest::Approx(1e-3));
  CHECK(t.back() <= 1.0 + 1e-12);
  const auto r = G.refined().times();
  for (double s : t) CHECK(std::any_of(r.begin(), r.end(), [&](double u) { return std::abs(u - s) < 1e-12 * s; }));
  CHECK_THROWS_AS((TimeGrid{1.0, 0.5, 2.0}.validate()), Error);
}

TEST_CASE("weak norm of step fields") {
  CHECK(weak_lp_norm(constant_field(2.5, 100, 0.04), 3) == doctest::Approx(2.5 * std::cbrt(4.0)));
  // sup over t of t |{f > t}|^{1/p}: candidates 3*1, 2*2, 1*3
  CHECK(weak_lp_norm(steps({{1, 1}, {3, 1}, {2, 1}}), 1) == doctest::Approx(4.0));
  CHECK(weak_lp_norm(steps({{1, 1}, {3, 1}, {2, 1}}), 2) == doctest::Approx(std::max({3.0, 2 * std::sqrt(2.0), std::sqrt(3.0)})));
  CHECK(superlevel_volume(steps({{1, 0.5}, {3, 0.25}, {2, 2}}), 1.5) == doctest::Approx(2.25));
  CHECK_THROWS_AS(weak_lp_norm(SampledField(1, 1.0), 2), Error);
}

TEST_CASE("lorentz norm of a constant field") {
  for (double c : {0.3, 2.0})
    for (double p : {0.8, 4.0 / 3, 3.0})
      for (double q : {0.5, 1.0, 2.0}) {
        const double V = 250 * 0.02;
        const double expect = c * std::pow(V, 1 / p) * std::pow(q, -1 / q);
        CHECK(std::abs(lorentz_norm(constant_field(c, 250, 0.02), p, q) - expect) < 1e-10 * expect);
      }
  CHECK_THROWS_AS(lorentz_norm(constant_field(1, 3, 1), 2, INFINITY), Error);
}

TEST_CASE("lorentz (p,p) is the Lp norm up to the 1/p factor") {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(0, 1);
  SampledField F(2, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x[] = {u(g), u(g)};
    F.push(x, cplx(u(g), u(g) - 0.5), 0.1 + u(g));
  }
  for (double p : {1.0, 1.5, 3.0})
    CHECK(lorentz_norm_pow(F, p, p) == doctest::Approx(std::pow(lp_norm(F, p), p) / p).epsilon(1e-12));
}

TEST_CASE("low-frequency correction volume") {
  LowFrequencyCorrection lf{2.0, 1.0, 0.5, 2};
  // (2 pi r)^{-1} 2 > t  <=>  r < 1/(pi t)
  CHECK(lf.volume_above(10) == doctest::Approx(pi * std::pow(1 / (10 * pi), 2)));
  CHECK(lf.volume_above(0.01) == doctest::Approx(pi * 0.25));
}

TEST_CASE("weak norm with correction: supercritical exponent is infinite") {
  auto F = constant_field(0.1, 10, 1.0);
  LowFrequencyCorrection lf{1.0, 1.0, 0.5, 1};
  CHECK(std::isinf(weak_lp_norm(F, 1.5, lf)));
  CHECK(std::isfinite(weak_lp_norm(F, 0.9, lf)));
  // at p = d/alpha the symbol alone has weak norm omega^{1/p} mass / (2 pi)^alpha
  CHECK(weak_lp_norm(F, 1.0, lf) >= 2 * 1.0 / (2 * pi) - 1e-15);
}

TEST_CASE("weak norm of |xi|^{-1} on a coarse d = 2 window") {
  // |{|xi|^{-1} > t}| = pi t^{-2}, so the weak L^2 norm is sqrt(pi)
  auto mu = AtomicMeasure::dirac(Point{0.0, 0.0}, 2 * pi);
  FrequencyWindow W{1.0, 4.0, 1.0 / 32, 2};
  auto F = riesz_field(mu, 1.0, W);
  LowFrequencyCorrection lf{2 * pi, 1.0, 1.0, 2};
  CHECK(weak_lp_norm(F, 2.0, lf) == doctest::Approx(std::sqrt(pi)).epsilon(0.03));
}

TEST_CASE("besov norm of a point mass") {
  // t^{(d-beta)/2} (4 pi t)^{-d/2}: constant when beta = 0
  for (int d : {1, 2}) {
    auto mu = AtomicMeasure::dirac(Point(d));
    CHECK(besov_norm(mu, 0.0, TimeGrid{1e-4, 1e2}) == doctest::Approx(std::pow(4 * pi, -0.5 * d)).epsilon(1e-9));
  }
  // beta > 0: the sup sits at the smallest time
  auto mu = AtomicMeasure::dirac(Point(1));
  auto r = besov_profile(mu, 0.5, TimeGrid{1e-2, 1.0});
  CHECK(r.t_at_max == doctest::Approx(1e-2));
  CHECK(r.value == doctest::Approx(std::pow(1e-2, -0.25) / std::sqrt(4 * pi)).epsilon(1e-9));
}

TEST_CASE("besov norm of a unit-mass Gaussian cloud is near the point-mass value at large t") {
  auto seg = uniform_segment(512);
  auto r = besov_profile(seg, 1.0, resolved_time_grid(seg));
  // beta = 1 = d: t^0 sup p_t * 1_[0,1] -> sup of the smoothed indicator, at most 1
  CHECK(r.value <= 1.0 + 1e-9);
  CHECK(r.value >= 0.99);
  CHECK(std::abs(r.stability) < 0.01);
}

TEST_CASE("morrey norm of simple measures") {
  auto mu = AtomicMeasure::dirac(Point{0.0});
  const double c[] = {0.0}, rad[] = {0.1, 1.0, 10.0};
  CHECK(morrey_norm(mu, 0.0, c, rad) == doctest::Approx(1.0));
  // Lebesgue on [0,1]: |B(x,r) cap [0,1]| / r <= 2
  auto seg = uniform_segment(4096);
  auto m = morrey_profile(seg, 1.0);
  CHECK(m.value == doctest::Approx(2.0).epsilon(0.02));
  CHECK(m.value <= 2.0 + 1e-9 + 2.0 / 4096 / m.radius_at_max);
}

TEST_CASE("morrey norm of the Cantor measure is stable in the level") {
  const double beta = std::log(2.0) / std::log(3.0);
  const double a = morrey_profile(cantor_measure(10), beta).value;
  const double b = morrey_profile(cantor_measure(12), beta).value;
  CHECK(a == doctest::Approx(b).epsilon(0.05));
}

TEST_CASE("annular L2 average of a point mass is the unit ball volume") {
  for (int d : {1, 2, 3})
    for (double R : {0.5, 4.0, 64.0})
      CHECK(annular_l2_average(AtomicMeasure::dirac(Point(d)), 0.0, R) == doctest::Approx(ball_volume(d)).epsilon(1e-12));
}

TEST_CASE("annular L2 samplers agree") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(0, 1);
  AtomicMeasure mu(2);
  for (int i = 0; i < 30; ++i) mu.add(std::vector<double>{u(g), u(g)}, u(g));
  const double ps = annular_l2_average(mu, 1.0, 6.0, PairSum{});
  const double la = annular_l2_average(mu, 1.0, 6.0, LatticeSampler{});
  const double mc = annular_l2_average(mu, 1.0, 6.0, MonteCarloSampler{400000, 3});
  CHECK(la == doctest::Approx(ps).epsilon(0.01));
  CHECK(mc == doctest::Approx(ps).epsilon(0.03));
}

TEST_CASE("gagliardo seminorm of intervals and squares") {
  for (double s : {0.25, 0.5, 0.75}) {
    const double g = gagliardo_seminorm(IndicatorSet::interval(0, 1), s, 1.0);
    CHECK(g == doctest::Approx(4 / (s * (1 - s))).epsilon(0.02));
  }
  // p = 2, eta = 1/4 has the same integrand as p = 1, eta = 1/2
  CHECK(gagliardo_seminorm(IndicatorSet::interval(0, 1), 0.25, 2.0) == doctest::Approx(16.0).epsilon(0.02));
  // dilation: [0, L] scales like L^{1 - s}
  CHECK(gagliardo_seminorm(IndicatorSet::interval(0, 4), 0.5, 1.0) == doctest::Approx(32.0).epsilon(0.02));
  const double q1 = gagliardo_seminorm(IndicatorSet::cube(2, 1.0), 0.5, 1.0);
  const double q2 = gagliardo_seminorm(IndicatorSet::cube(2, 2.0), 0.5, 1.0);
  CHECK(q2 / q1 == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.02));
}

TEST_CASE("heat Lq norm of a point mass") {
  for (double q : {1.0, 2.0, 4.0}) {
    const double t = 0.1;
    const double expect = std::pow(4 * pi * t, -0.5 * (1 - 1 / q)) * std::pow(q, -0.5 / q);
    CHECK(heat_lq_norm(AtomicMeasure::dirac(Point{0.0}), t, q) == doctest::Approx(expect).epsilon(1e-4));
  }
}

TEST_CASE("interpolated Lq bound holds") {
  auto mu = cantor_measure(8);
  const double beta = std::log(2.0) / std::log(3.0);
  for (double t : {1e-3, 1e-2, 0.1}) {
    auto b = lq_interpolated_bound(mu, beta, 2.0, t);
    CHECK(b.lhs <= b.rhs * (1 + 1e-9));
  }
}

}  // TEST_SUITE
