#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "fdecay/errors.hpp"
#include "fdecay/experiments.hpp"
#include "fdecay/fit.hpp"
#include "json.hpp"

using namespace fdecay;
using json = nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

Parameters params(int d, double alpha, double beta) {
  Parameters P;
  P.d = d;
  P.alpha = alpha;
  P.beta = beta;
  return P;
}

const Series& series_named(const ExperimentRecord& r, const std::string& n) {
  for (const auto& s : r.all_series())
    if (s.name == n) return s;
  throw std::runtime_error("no series " + n);
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("fit of an exact line and an exact power law") {
  const double x[] = {1, 2, 3, 4}, y[] = {1, 3, 5, 7};
  auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(-1.0));
  CHECK(f.residual == doctest::Approx(0.0));
  const double X[] = {1, 2, 4, 8}, Y[] = {3, 3 * std::pow(2, -0.7), 3 * std::pow(4, -0.7), 3 * std::pow(8, -0.7)};
  CHECK(fit_loglog(X, Y).slope == doctest::Approx(-0.7));
  const double bad[] = {1, 0, 1, 1};
  CHECK_THROWS_AS(fit_loglog(X, bad), Error);
}

TEST_CASE("config parsing") {
  auto c = Config::parse("# comment\n a = 1.5 \nlist = 1, 2 ,3 # trailing\nname = circle:512\nflag = true\nq = inf\n");
  CHECK(c.get_double("a", 0) == 1.5);
  CHECK(c.get_doubles("list", {}) == std::vector<double>{1, 2, 3});
  CHECK(c.get_string("name", "") == "circle:512");
  CHECK(c.get_bool("flag", false));
  CHECK(std::isinf(c.get_double("q", 0)));
  CHECK(c.get_int("missing", 7) == 7);
  CHECK(code_of([&] { c.get_int("a", 0); }) == Errc::ConfigError);
  CHECK(code_of([] { Config::parse("no equals sign"); }) == Errc::ConfigError);
  CHECK(code_of([] { Config::load("/nonexistent/file.conf"); }) == Errc::ConfigError);
  auto d = Config::parse("a = 2\nb = 3");
  c.merge(d);
  CHECK(c.get_double("a", 0) == 2);
  CHECK(c.get_double("b", 0) == 3);
}

TEST_CASE("thresholds from config") {
  Thresholds def;
  auto t = Thresholds::from(Config::parse("thresholds.bounded_slope = 0.02\nthresholds.balance_levels = 3"));
  CHECK(t.bounded_slope == 0.02);
  CHECK(t.balance_levels == 3);
  CHECK(t.exponent_rel_tol == def.exponent_rel_tol);
}

TEST_CASE("records reject non-finite scalars and serialize") {
  ExperimentRecord r("demo", "dirac-d1", 9);
  r.param("alpha", 0.5);
  r.scalar("x", 1.25);
  CHECK(code_of([&] { r.scalar("bad", NAN); }) == Errc::InvalidArgument);
  auto& s = r.series("curve", "R");
  auto& s2 = r.series("other", "R");
  s.x = {1, 2};
  s.y = {3, 4};
  s2.x = {1};
  s2.y = {INFINITY};
  r.check("ok", true, 1, 1, 0);
  r.check("not_ok", false, 2, 1, 0.5, "too big");
  CHECK_FALSE(r.passed());
  CHECK(r.get("x") == 1.25);

  std::ostringstream os;
  write_csv_rows(os, r);
  std::istringstream in(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    CHECK(line.rfind("demo,dirac-d1,9,", 0) == 0);
  }
  // param, scalar, 3 series points, 2 checks x 2 rows, wall time
  CHECK(rows == 10);

  auto j = json::parse(to_json(r));
  CHECK(j["scalars"]["x"] == 1.25);
  CHECK(j["series"][0]["y"][1] == 4);
  CHECK(j["series"][1]["y"][0].is_null());
  auto f = json::parse(failure_report({r}));
  CHECK(f["passed"] == false);
  REQUIRE(f["failures"].size() == 1);
  CHECK(f["failures"][0]["check"] == "not_ok");
}

TEST_CASE("measure descriptors") {
  auto c = MeasureSpec::parse("circle:512");
  CHECK(c.d == 2);
  CHECK(c.atoms == 512);
  CHECK(c.natural_beta() == 1);
  CHECK(c.name() == "circle-n512");
  auto s = MeasureSpec::parse("sphere:2:3:256");
  CHECK(s.k == 2);
  CHECK(s.total_mass() == doctest::Approx(4 * pi));
  auto k = MeasureSpec::parse("cantor:8:0.25");
  CHECK(k.natural_beta() == doctest::Approx(0.5));
  CHECK(MeasureSpec::parse("dirac:3").d == 3);
  CHECK(MeasureSpec::parse("zero:2").total_mass() == 0);
  CHECK(code_of([] { MeasureSpec::parse("torus"); }) == Errc::ConfigError);
  CHECK(code_of([] { MeasureSpec::parse("sphere:2"); }) == Errc::ConfigError);
  CHECK(code_of([] { MeasureSpec::parse("dirac:x"); }) == Errc::ConfigError);
}

TEST_CASE("closed-form transforms of the descriptors match their atoms") {
  for (const char* m : {"dirac:2", "cantor:6", "segment:100", "circle:4096", "sphere:2:3:20000"}) {
    auto spec = MeasureSpec::parse(m);
    auto mu = spec.build();
    auto ft = spec.transform();
    const double tol = spec.family == Family::Sphere && spec.k == 2 ? 2e-3 : 1e-6;
    for (double r : {0.3, 2.0, 7.5}) {
      Point xi(spec.d);
      xi[0] = r;
      CHECK(std::abs(ft(xi) - fourier_transform_atomic(mu, xi)) < tol);
      CHECK(spec.modulus(r) == doctest::Approx(std::abs(ft(xi))).epsilon(1e-10));
    }
  }
}

TEST_CASE("main inequality for a point mass recovers the symbol's weak norm") {
  // (2 pi |xi|)^{-0.6} in d = 1 has weak L^{1/0.6} norm pi^{-0.6}. Cell centres overstate the
  // volume above a level by up to (n+1)/(n+1/2) in cell n, so start the lattice 32 cells out.
  MainInequalityOptions opt;
  opt.windows = {8, 16, 32};
  opt.xi_min = 0.5;
  auto r = run_main_inequality(params(1, 0.6, 0.0), MeasureSpec::parse("dirac:1"), opt, RunContext{});
  for (double lhs : series_named(r, "lhs").y) CHECK(lhs == doctest::Approx(std::pow(pi, -0.6)).epsilon(0.02));
  CHECK(r.get("rhs") == doctest::Approx(std::pow(4 * pi, -0.25)).epsilon(1e-6));
  CHECK(r.passed());
}

TEST_CASE("main inequality for the zero measure") {
  MainInequalityOptions opt;
  opt.windows = {8, 16};
  auto r = run_main_inequality(params(2, 1.0, 1.0), MeasureSpec::parse("zero:2"), opt, RunContext{});
  CHECK(r.get("ratio_max") == 0);
  CHECK(r.get("rhs") == 0);
  CHECK(r.passed());
}

TEST_CASE("dyadic decomposition: admissibility and the empty superlevel limit") {
  auto dirac = MeasureSpec::parse("dirac:1");
  CHECK(code_of([&] { verify_dyadic_decomposition(params(1, 0.4, 0.0), dirac, 1.0, {}, RunContext{}); }) ==
        Errc::InadmissibleAlpha);
  CHECK(code_of([&] { verify_dyadic_decomposition(params(1, 1.1, 0.0), dirac, 1.0, {}, RunContext{}); }) ==
        Errc::InadmissibleAlpha);
  double prev = INFINITY;
  for (double lambda : {1.0, 1e3, 1e6}) {
    auto r = verify_dyadic_decomposition(params(1, 0.75, 0.0), dirac, lambda, {}, RunContext{});
    CHECK(r.get("superlevel_volume") <= r.get("chebyshev_bound"));
    CHECK(r.get("chebyshev_bound") < prev);
    prev = r.get("chebyshev_bound");
    // the symbol is unbounded at 0, so the volume only tends to 0, like lambda^{-1/alpha}
    if (lambda > 1) CHECK(r.get("superlevel_volume") < 2 * std::pow(lambda / 2, -1 / 0.75));
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("dyadic terms of a point mass follow the symbol exactly") {
  Parameters P = params(1, 0.75, 0.0);
  const double lambda = lambda_for_level(P, 1.0, 1 / std::sqrt(4 * pi), 6.5);
  auto r = verify_dyadic_decomposition(P, MeasureSpec::parse("dirac:1"), lambda, {}, RunContext{});
  CHECK(r.get("I2_slope") == doctest::Approx(-(2 * 0.75 - 1)).epsilon(1e-3));
  CHECK(r.get("I1_slope") == doctest::Approx(1 - 0.75).epsilon(1e-3));
  CHECK(r.get("N0") == doctest::Approx(6.5));
}

TEST_CASE("preconditions of the scaling and sharpness scans") {
  CHECK(code_of([] { run_sobolev_scaling(0.5, 2.0, {}, RunContext{}); }) == Errc::EtaPOutOfRange);
  CHECK(code_of([] { run_sharpness_scan(params(1, 0.5, 0.5), 1.1, {}, RunContext{}); }) ==
        Errc::ExponentNotSubcritical);
  Parameters S = params(3, 1.5, 1.0);
  S.q = 1.0;
  CHECK(code_of([&] { run_sphere_divergence(S, 1, {}, RunContext{}); }) == Errc::UnsupportedShape);
  Parameters Q = params(2, 1.0, 1.0);
  Q.q = INFINITY;
  CHECK(code_of([&] { run_sphere_divergence(Q, 1, {}, RunContext{}); }) == Errc::QNotFinite);
  CHECK(code_of([] { run_perimeter_scaling("triangle", {}, RunContext{}); }) == Errc::UnsupportedShape);
}

TEST_CASE("sharpness scan with a single bump has a finite baseline") {
  SharpnessOptions opt;
  opt.scales = {1, 1.5};
  opt.seeds = 2;
  opt.samples = 256;
  auto r = run_sharpness_scan(params(1, 0.5, 0.5), 0.9, opt, RunContext{});
  const auto& s = series_named(r, "weak_r");
  CHECK(std::isfinite(s.y[0]));
  CHECK(s.y[0] > 0);
}

TEST_CASE("records do not depend on the worker count") {
  const double beta = std::log(2.0) / std::log(3.0);
  RunContext one, three;
  three.ex = Executor(3);
  auto a = run_l2_average_scan(MeasureSpec::parse("cantor:8"), beta, {2, 4, 8, 16}, one);
  auto b = run_l2_average_scan(MeasureSpec::parse("cantor:8"), beta, {2, 4, 8, 16}, three);
  REQUIRE(a.scalars().size() == b.scalars().size());
  for (std::size_t i = 0; i < a.scalars().size(); ++i) CHECK(a.scalars()[i].second == b.scalars()[i].second);
  SharpnessOptions opt;
  opt.scales = {4, 8};
  opt.seeds = 4;
  opt.samples = 256;
  auto c = run_sharpness_scan(params(1, 0.5, 0.5), 0.9, opt, one);
  auto d = run_sharpness_scan(params(1, 0.5, 0.5), 0.9, opt, three);
  CHECK(c.get("growth_exponent") == d.get("growth_exponent"));
}

TEST_CASE("bessel remainder constant of order 1/2 vanishes") {
  CHECK(bessel_remainder_constant(BesselOrder::half(1), 1, 100) < 1e-12);
}

}  // TEST_SUITE
