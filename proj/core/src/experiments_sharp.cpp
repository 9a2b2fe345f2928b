#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fdecay/constructions.hpp"
#include "fdecay/errors.hpp"
#include "fdecay/experiments.hpp"
#include "fdecay/fit.hpp"
#include "fdecay/indicator.hpp"
#include "fdecay/kernels.hpp"

namespace fdecay {

namespace {

constexpr double pi = std::numbers::pi;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of_mean(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

// ---- perimeter

ExperimentRecord run_perimeter_scaling(const std::string& shape, const PerimeterOptions& opt,
                                       const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  if (shape != "square" && shape != "ball") fail(Errc::UnsupportedShape, "perimeter scan shape: " + shape);
  if (opt.sizes.size() < 2) fail(Errc::InvalidArgument, "need at least two sizes");
  const int d = 2;
  const double p = 2.0 * d / (d + 1);
  ExperimentRecord rec("perimeter", shape, ctx.seed);
  rec.param("d", d);
  rec.param("p", p);
  rec.param("window", opt.window);
  auto& s = rec.series("weak_norm", "perimeter");
  std::vector<double> per, lhs;
  for (double L : opt.sizes) {
    SampledField F(d, 1.0);
    double P;
    if (shape == "square") {
      const IndicatorSet E = IndicatorSet::cube(d, L);
      P = E.perimeter();
      LatticeOptions lo;
      lo.orthant = true, lo.keep_points = false;
      F = riesz_field([E](std::span<const double> xi) { return cplx(indicator_ft_modulus(E, xi)); }, 0.0,
                      FrequencyWindow{0.0, opt.window, opt.spacing, d}, ctx.ex, lo);
    } else {
      const double R = L / 2;
      P = IndicatorSet::ball(Point(d), R).perimeter();
      F = radial_riesz_field([R](double r) { return std::abs(ball_indicator_ft(r, R, 2)); }, 0.0, d, 0.0,
                             opt.window, opt.shell);
    }
    const double w = weak_lp_norm(F, p);
    s.x.push_back(P), s.y.push_back(w);
    per.push_back(P), lhs.push_back(w);
    rec.scalar("ratio_L" + fmt(L), w / std::sqrt(P));
  }
  const LinearFit f = fit_loglog(per, lhs);
  rec.scalar("slope", f.slope);
  rec.scalar("fit_residual", f.rms);
  rec.check("perimeter_exponent", std::abs(f.slope - 0.5) <= ctx.th.scaling_slope_tol, f.slope, 0.5,
            ctx.th.scaling_slope_tol, "log-log slope of the weak norm of chi_E^ against the perimeter");
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- Sobolev

ExperimentRecord run_sobolev_scaling(double eta, double p, const SobolevOptions& opt, const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const double s = eta * p;
  if (!(eta > 0) || !(p >= 1) || !(s < 1)) fail(Errc::EtaPOutOfRange, "need eta > 0, p >= 1 and eta p < 1");
  if (opt.sizes.size() < 2) fail(Errc::InvalidArgument, "need at least two sizes");
  const int d = 1;
  const double pw = 2.0 * d / (d + s);
  ExperimentRecord rec("sobolev", "interval", ctx.seed);
  rec.param("d", d);
  rec.param("eta", eta);
  rec.param("p", p);
  rec.param("p_weak", pw);
  auto& sl = rec.series("lhs", "L");
  auto& sr = rec.series("rhs", "L");
  std::vector<double> lhs, rhs;
  for (double L : opt.sizes) {
    const IndicatorSet E = IndicatorSet::interval(0.0, L);
    const SampledField F = radial_riesz_field(
        [L](double r) { return std::abs(ball_indicator_ft(r, L / 2, 1)); }, 0.0, d, 0.0, opt.window, opt.shell);
    const double l = weak_lp_norm(F, pw);
    const double r = std::sqrt(gagliardo_seminorm(E, eta, p));
    sl.x.push_back(L), sl.y.push_back(l);
    sr.x.push_back(L), sr.y.push_back(r);
    lhs.push_back(l), rhs.push_back(r);
    rec.scalar("ratio_L" + fmt(L), l / r);
  }
  const LinearFit fl = fit_loglog(opt.sizes, lhs), fr = fit_loglog(opt.sizes, rhs);
  const double predicted = (d - s) / 2;
  rec.scalar("lhs_slope", fl.slope);
  rec.scalar("rhs_slope", fr.slope);
  rec.scalar("slope_predicted", predicted);
  rec.check("dilation_exponents_match", std::abs(fl.slope - fr.slope) <= ctx.th.scaling_slope_tol,
            fl.slope - fr.slope, 0.0, ctx.th.scaling_slope_tol, "lhs slope minus rhs slope");

  const double g1 = gagliardo_seminorm(IndicatorSet::interval(0.0, 1.0), eta, p);
  const double exact = 4 / (s * (1 - s));
  rec.scalar("gagliardo_unit", g1);
  rec.scalar("gagliardo_unit_exact", exact);
  const double err = std::abs(g1 / exact - 1);
  rec.check("gagliardo_unit_interval", err <= ctx.th.gagliardo_rel_tol, g1, exact, ctx.th.gagliardo_rel_tol,
            "relative error " + fmt(err));
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- Khintchine sharpness

ExperimentRecord run_sharpness_scan(const Parameters& P0, double r_factor, const SharpnessOptions& opt,
                                    const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const Parameters P = validate_parameters(P0);
  if (!(r_factor > 0)) fail(Errc::InvalidArgument, "r factor must be positive");
  const double r = r_factor * P.p_weak;
  if (r > P.p_weak * (1 + 1e-12)) fail(Errc::ExponentNotSubcritical, "r must not exceed the weak exponent");
  if (opt.scales.size() < 2 || opt.seeds < 1 || opt.samples < 1)
    fail(Errc::InvalidArgument, "sharpness scan needs scales, seeds and samples");
  const int d = P.d;

  ExperimentRecord rec("sharpness", "rademacher-d" + std::to_string(d), ctx.seed);
  rec.param("d", d);
  rec.param("alpha", P.alpha);
  rec.param("beta", P.beta);
  rec.param("p_weak", P.p_weak);
  rec.param("r", r);
  rec.param("seeds", opt.seeds);
  rec.param("samples", static_cast<double>(opt.samples));
  rec.param("spacing", opt.spacing);

  const BumpProfile B;
  const double phi_l1 = total_variation(bump_phi(B, d));
  rec.scalar("phi_l1", phi_l1);

  auto& s_sub = rec.series("weak_r", "N");
  auto& s_crit = rec.series("weak_p", "N");
  std::vector<double> m_sub, m_crit;
  for (double N : opt.scales) {
    const long M = bump_count(N, P.beta);
    const Annulus A{N, 2 * N};
    const double vol = ball_volume(d) * (std::pow(A.r_out, d) - std::pow(A.r_in, d));
    std::vector<double> sub(opt.seeds), crit(opt.seeds);
    ctx.ex.for_chunks(static_cast<std::size_t>(opt.seeds), 1, [&](std::size_t i, std::size_t, std::size_t) {
      const std::uint64_t seed = ctx.seed * 1000003ULL + static_cast<std::uint64_t>(N) * 7919ULL + i;
      const RademacherLayout lay = rademacher_layout(B, d, N, P.beta, opt.spacing, seed);
      const auto xi = annulus_samples(d, A, opt.samples, seed ^ 0x9e3779b97f4a7c15ULL);
      SampledField F(d, vol / static_cast<double>(opt.samples), false);
      F.reserve(opt.samples);
      for (std::size_t k = 0; k < opt.samples; ++k) {
        std::span<const double> x(xi.data() + k * d, d);
        F.push(x, riesz_symbol(x, P.alpha) * lay.analytic_ft(x));
      }
      sub[i] = weak_lp_norm(F, r);
      crit[i] = weak_lp_norm(F, P.p_weak);
    });
    const double ms = mean(sub), mc = mean(crit);
    s_sub.x.push_back(N), s_sub.y.push_back(ms);
    s_crit.x.push_back(N), s_crit.y.push_back(mc);
    m_sub.push_back(ms), m_crit.push_back(mc);
    rec.scalar("weak_r_stderr_N" + fmt(N), stderr_of_mean(sub));
    rec.scalar("total_variation_bound_N" + fmt(N), static_cast<double>(M) * std::pow(N, -P.beta) * phi_l1);
  }
  const double predicted = d / r - P.alpha - P.beta / 2;
  const LinearFit fs = fit_loglog(opt.scales, m_sub), fc = fit_loglog(opt.scales, m_crit);
  rec.scalar("growth_exponent", fs.slope);
  rec.scalar("growth_exponent_predicted", predicted);
  rec.scalar("growth_fit_residual", fs.rms);
  rec.scalar("control_slope", fc.slope);
  const double err = std::abs(fs.slope - predicted) / std::abs(predicted);
  rec.check("growth_exponent", err <= ctx.th.sharp_rel_tol, fs.slope, predicted, ctx.th.sharp_rel_tol,
            "relative error " + fmt(err));
  rec.check("control_bounded", fc.slope <= ctx.th.bounded_slope, fc.slope, 0.0, ctx.th.bounded_slope,
            "weak norm at the critical exponent");
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- sphere divergence

ExperimentRecord run_sphere_divergence(const Parameters& P0, int k, const SphereOptions& opt,
                                       const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  Parameters P = P0;
  P.beta = k;
  P = validate_parameters(P);
  if (P.d != k + 1) fail(Errc::UnsupportedShape, "sphere divergence scan needs d = k + 1 (radial field)");
  const double q = P.q.value_or(1.0);
  if (!std::isfinite(q)) fail(Errc::QNotFinite, "Lorentz exponent q must be finite");
  if (opt.m_max - opt.m_min + 1 < 2) fail(Errc::InvalidArgument, "need at least two windows");
  const int d = P.d;
  const double p = P.p_weak;

  ExperimentRecord rec("sphere_divergence", "sphere-k" + std::to_string(k) + "-d" + std::to_string(d), ctx.seed);
  rec.param("d", d);
  rec.param("k", k);
  rec.param("alpha", P.alpha);
  rec.param("p", p);
  rec.param("q", q);

  const double R_max = std::ldexp(1.0, opt.m_max);
  const SampledField full = radial_riesz_field([k](double r) { return std::abs(sphere_ft_radial(k, r)); },
                                               P.alpha, d, 0.0, R_max, opt.shell);
  auto& s_lor = rec.series("lorentz_pow", "m");
  auto& s_weak = rec.series("weak", "m");
  std::vector<double> ms, lor, radii, weak;
  for (int m = opt.m_min; m <= opt.m_max; ++m) {
    const double R = std::ldexp(1.0, m);
    SampledField F(d, full.cell_volume());
    for (std::size_t i = 0; i < full.size(); ++i)
      if (full.point(i)[0] < R) F.push(full.point(i), full.value(i), full.volume(i));
    const double l = lorentz_norm_pow(F, p, q), w = weak_lp_norm(F, p);
    s_lor.x.push_back(m), s_lor.y.push_back(l);
    s_weak.x.push_back(m), s_weak.y.push_back(w);
    ms.push_back(m), lor.push_back(l), radii.push_back(R), weak.push_back(w);
  }
  const LinearFit fl = fit_line(ms, lor), fw = fit_loglog(radii, weak);
  rec.scalar("lorentz_slope_per_level", fl.slope);
  rec.scalar("lorentz_fit_residual", fl.residual);
  rec.scalar("weak_slope", fw.slope);
  rec.check("lorentz_grows", fl.slope > 0, fl.slope, 0.0, 0.0, "slope of ||.||_{p,q}^q against m");
  rec.check("lorentz_linear", fl.residual < ctx.th.linear_residual, fl.residual, 0.0, ctx.th.linear_residual,
            "sqrt(1 - R^2) of the linear fit");
  rec.check("weak_bounded", fw.slope <= ctx.th.bounded_slope, fw.slope, 0.0, ctx.th.bounded_slope,
            "log-log slope of the weak norm against the window radius");

  // lower bound: C_k |{C' <= |xi| < rho(t)}| with rho(t) = (A_alpha t)^{-1/(alpha + k/2)}
  const BesselOrder nu = BesselOrder::for_sphere(k);
  const double C = bessel_remainder_constant(nu, 1.0, 1e4);
  const double Cp = 10 * C;
  const double Ck = 1 - (2 / pi) * std::asin(0.2);
  const double A = 10 * std::pow(2 * pi, P.alpha - 1) * std::sqrt(pi / 2);
  rec.scalar("remainder_constant", C);
  rec.scalar("C_prime", Cp);
  rec.scalar("C_k", Ck);
  rec.scalar("A_alpha", A);
  auto& s_lb = rec.series("superlevel_over_bound", "t");
  double worst = std::numeric_limits<double>::infinity();
  const double e = 1 / (P.alpha + 0.5 * k);
  for (int i = 0; i < 8; ++i) {
    // rho stays inside half the window so the computed superlevel set is not clipped
    const double lo = std::max(2 * Cp, 1.0), hi = R_max / 2;
    const double rho = lo * std::pow(hi / lo, i / 7.0);
    const double t = std::pow(rho, -1 / e) / A;
    const double bound = Ck * ball_volume(d) * (std::pow(rho, d) - std::pow(Cp, d));
    const double v = superlevel_volume(full, t);
    s_lb.x.push_back(t), s_lb.y.push_back(v / bound);
    worst = std::min(worst, v / bound);
  }
  rec.scalar("superlevel_over_bound_min", worst);
  rec.check("superlevel_dominates_bound", worst >= 1, worst, 1.0, 0.0,
            "computed |{|I_a mu| > t}| over the ball-minus-cylinder lower bound");
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

}  // namespace fdecay
