#include "fdecay/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fdecay/constructions.hpp"
#include "fdecay/errors.hpp"
#include "fdecay/fit.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/quadrature.hpp"

namespace fdecay {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(Errc::ConfigError, "measure '" + what + "': bad integer " + s);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// alpha window check that also accepts beta = 0
Parameters checked(Parameters P) {
  if (P.beta == 0.0) {
    check_alpha_range(P.d, P.alpha, 0.0);
    P.p_weak = weak_exponent(P.d, P.alpha, 0.0);
    return P;
  }
  return validate_parameters(P);
}

void add_params(ExperimentRecord& r, const Parameters& P) {
  r.param("d", P.d);
  r.param("alpha", P.alpha);
  r.param("beta", P.beta);
  r.param("p_weak", P.p_weak);
}

}  // namespace

// ---- measure descriptors

MeasureSpec MeasureSpec::parse(const std::string& text) {
  const auto f = split(text, ':');
  if (f.empty()) fail(Errc::ConfigError, "empty measure descriptor");
  MeasureSpec m;
  const std::string& kind = f[0];
  if (kind == "dirac") {
    m.family = Family::Dirac;
    m.d = f.size() > 1 ? static_cast<int>(to_long(f[1], text)) : 1;
  } else if (kind == "circle") {
    m.family = Family::Sphere, m.k = 1, m.d = 2;
    if (f.size() > 1) m.atoms = static_cast<std::size_t>(to_long(f[1], text));
  } else if (kind == "sphere") {
    if (f.size() < 3) fail(Errc::ConfigError, "sphere needs sphere:k:d");
    m.family = Family::Sphere;
    m.k = static_cast<int>(to_long(f[1], text));
    m.d = static_cast<int>(to_long(f[2], text));
    if (f.size() > 3) m.atoms = static_cast<std::size_t>(to_long(f[3], text));
  } else if (kind == "cantor") {
    m.family = Family::Cantor, m.d = 1;
    if (f.size() > 1) m.level = static_cast<int>(to_long(f[1], text));
    if (f.size() > 2) m.ratio = std::stod(f[2]);
  } else if (kind == "segment") {
    m.family = Family::Segment, m.d = 1, m.atoms = 1000;
    if (f.size() > 1) m.atoms = static_cast<std::size_t>(to_long(f[1], text));
  } else if (kind == "zero") {
    m.family = Family::Zero;
    m.d = f.size() > 1 ? static_cast<int>(to_long(f[1], text)) : 1;
  } else {
    fail(Errc::ConfigError, "unknown measure family '" + kind + "'");
  }
  if (m.d < 1 || m.d > kMaxDim) fail(Errc::ConfigError, "measure dimension out of range: " + text);
  return m;
}

std::string MeasureSpec::name() const {
  switch (family) {
    case Family::Dirac:
      return "dirac-d" + std::to_string(d);
    case Family::Sphere:
      if (k == 1 && d == 2) return "circle-n" + std::to_string(atoms);
      return "sphere-k" + std::to_string(k) + "-d" + std::to_string(d) + "-n" + std::to_string(atoms);
    case Family::Cantor:
      return "cantor-L" + std::to_string(level) + (ratio == 1.0 / 3.0 ? std::string() : "-r" + fmt(ratio));
    case Family::Segment:
      return "segment-n" + std::to_string(atoms);
    case Family::Zero:
      return "zero-d" + std::to_string(d);
  }
  return "unknown";
}

double MeasureSpec::natural_beta() const {
  switch (family) {
    case Family::Dirac:
      return 0;
    case Family::Sphere:
      return k;
    case Family::Cantor:
      return std::log(2.0) / std::log(1 / ratio);
    case Family::Segment:
      return 1;
    case Family::Zero:
      return 0;
  }
  return 0;
}

double MeasureSpec::total_mass() const {
  switch (family) {
    case Family::Sphere:
      return sphere_area(k + 1);
    case Family::Zero:
      return 0;
    default:
      return 1;
  }
}

AtomicMeasure MeasureSpec::build() const {
  switch (family) {
    case Family::Dirac:
      return AtomicMeasure::dirac(Point(d));
    case Family::Sphere:
      return sphere_measure(k, d, atoms);
    case Family::Cantor:
      return cantor_measure(level, ratio);
    case Family::Segment:
      return uniform_segment(atoms);
    case Family::Zero:
      return AtomicMeasure(d);
  }
  fail(Errc::InvalidArgument, "unknown family");
}

namespace {

// sum_{i<n} h e^{-2 pi i xi h (i + 1/2)}, h = 1/n
cplx segment_ft(std::size_t n, double xi) {
  const double h = 1.0 / static_cast<double>(n);
  const double s = std::sin(pi * xi * h);
  double mod;
  if (std::abs(s) < 1e-12) mod = static_cast<double>(n) * h * std::cos(pi * xi) / std::cos(pi * xi * h);
  else mod = h * std::sin(pi * xi) / s;
  double ph = 0.5 * xi;
  ph -= std::nearbyint(ph);
  return mod * cplx(std::cos(2 * pi * ph), -std::sin(2 * pi * ph));
}

}  // namespace

Transform MeasureSpec::transform() const {
  const MeasureSpec m = *this;
  switch (family) {
    case Family::Dirac:
      return [](std::span<const double>) { return cplx(1.0); };
    case Family::Sphere:
      return [m](std::span<const double> xi) { return cplx(sphere_ft(m.k, xi)); };
    case Family::Cantor:
      return [m](std::span<const double> xi) { return cantor_ft(m.level, m.ratio, xi[0]); };
    case Family::Segment:
      return [m](std::span<const double> xi) { return segment_ft(m.atoms, xi[0]); };
    case Family::Zero:
      return [](std::span<const double>) { return cplx(0.0); };
  }
  fail(Errc::InvalidArgument, "unknown family");
}

double MeasureSpec::modulus(double r) const {
  switch (family) {
    case Family::Dirac:
      return 1;
    case Family::Sphere:
      if (d != k + 1) fail(Errc::UnsupportedShape, "sphere transform is radial only when d = k + 1");
      return std::abs(sphere_ft_radial(k, r));
    case Family::Cantor:
      return std::abs(cantor_ft(level, ratio, r));
    case Family::Segment:
      return std::abs(segment_ft(atoms, r));
    case Family::Zero:
      return 0;
  }
  return 0;
}

// dirac at 0, spheres about 0, real measures in d = 1
bool MeasureSpec::coordinate_even() const { return true; }

// ---- main inequality

ExperimentRecord run_main_inequality(const Parameters& P0, const MeasureSpec& spec,
                                     const MainInequalityOptions& opt, const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const Parameters P = checked(P0);
  if (P.d != spec.d) fail(Errc::DimensionMismatch, "parameters and measure disagree on d");
  ExperimentRecord rec("main_inequality", spec.name(), ctx.seed);
  add_params(rec, P);
  if (opt.windows.size() < 2) fail(Errc::InvalidArgument, "need at least two windows");

  const AtomicMeasure mu = spec.build();
  const double mass = total_variation(mu);
  if (mass == 0) {
    // both sides vanish; the ratio is taken to be 0
    for (const char* n : {"total_variation", "besov", "rhs", "ratio_max"}) rec.scalar(n, 0.0);
    auto& s = rec.series("ratio", "window");
    for (double X : opt.windows) s.x.push_back(X), s.y.push_back(0.0);
    rec.check("ratio_bounded", true, 0.0, 0.0, ctx.th.bounded_slope, "zero measure");
    rec.set_wall_seconds(elapsed(t0));
    return rec;
  }
  const BesovResult B = besov_profile(mu, P.beta, resolved_time_grid(mu), ctx.ex);
  const double rhs = std::sqrt(mass * B.value);
  rec.scalar("total_variation", mass);
  rec.scalar("besov", B.value);
  rec.scalar("besov_t_at_max", B.t_at_max);
  rec.scalar("rhs", rhs);
  rec.stability("besov_refinement", B.stability);

  const double h = opt.spacing > 0 ? opt.spacing : (P.d == 1 ? 1.0 / 64 : 1.0 / 8);
  rec.param("spacing", h);
  const double xi_min = opt.xi_min > 0 ? opt.xi_min : h;
  rec.param("xi_min", xi_min);
  const Transform ft = spec.transform();
  LatticeOptions lo;
  lo.orthant = spec.coordinate_even();
  lo.keep_points = false;
  auto& s_ratio = rec.series("ratio", "window");
  auto& s_lhs = rec.series("lhs", "window");
  auto& s_low = rec.series("lhs_uncorrected", "window");
  std::vector<double> xs, ratios;
  for (double X : opt.windows) {
    FrequencyWindow W{xi_min, X, h, P.d};
    const SampledField F = riesz_field(ft, P.alpha, W, ctx.ex, lo);
    const double plain = weak_lp_norm(F, P.p_weak);
    const double lhs = weak_lp_norm(F, P.p_weak, LowFrequencyCorrection{mass, P.alpha, W.xi_min, P.d});
    const double ratio = rhs > 0 ? lhs / rhs : 0.0;
    s_ratio.x.push_back(X), s_ratio.y.push_back(ratio);
    s_lhs.x.push_back(X), s_lhs.y.push_back(lhs);
    s_low.x.push_back(X), s_low.y.push_back(plain);
    xs.push_back(X), ratios.push_back(ratio);
  }
  const double worst = *std::max_element(ratios.begin(), ratios.end());
  rec.scalar("ratio_max", worst);
  rec.scalar("ratio_refined_besov", worst * std::sqrt(B.value / B.refined_value));
  const bool finite = std::all_of(ratios.begin(), ratios.end(), [](double r) { return std::isfinite(r) && r > 0; });
  if (finite) {
    const LinearFit f = fit_loglog(xs, ratios);
    rec.scalar("ratio_slope", f.slope);
    rec.scalar("ratio_fit_residual", f.rms);
    rec.check("ratio_bounded", f.slope <= ctx.th.bounded_slope, f.slope, 0.0, ctx.th.bounded_slope,
              "log-log slope of lhs/rhs against the window radius");
  } else {
    rec.check("ratio_bounded", false, worst, 0.0, ctx.th.bounded_slope, "ratio not finite and positive");
  }
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- dyadic decomposition

double lambda_for_level(const Parameters& P, double mass, double besov, double n0) {
  const double a = 2 * P.alpha + P.beta;
  return std::pow(2.0, -n0 * a / 2) * std::sqrt(mass * besov);
}

namespace {

struct AnnulusIntegrals {
  double l1 = 0, l2 = 0, volume_above = 0;
};

// Integrals of g and g^2 over {a <= |xi| < b} for the radial field g(|xi|),
// plus the volume where g > lambda.
AnnulusIntegrals annulus_integrals(const std::function<double(double)>& g, int d, double a, double b,
                                   double lambda) {
  const double area = d == 1 ? 2.0 : sphere_area(d);
  const int panels = static_cast<int>(std::clamp(std::ceil(4 * (b - a)), 16.0, 4.0e6));
  const GaussRule& rule = gauss_legendre(8);
  const double w = (b - a) / panels;
  AnnulusIntegrals out;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = a + w * (p + 0.5 * (rule.x[i] + 1));
      const double v = g(r), jac = 0.5 * w * rule.w[i] * area * std::pow(r, d - 1);
      out.l1 += jac * v;
      out.l2 += jac * v * v;
    }
  const long n = static_cast<long>(std::clamp(std::ceil(16 * (b - a)), 4096.0, 1.6e7));
  const double dr = (b - a) / n;
  for (long i = 0; i < n; ++i) {
    const double r0 = a + i * dr, r1 = r0 + dr;
    if (g(0.5 * (r0 + r1)) > lambda)
      out.volume_above += (d == 1 ? 2 * dr : ball_volume(d) * (std::pow(r1, d) - std::pow(r0, d)));
  }
  return out;
}

}  // namespace

ExperimentRecord verify_dyadic_decomposition(const Parameters& P0, const MeasureSpec& spec, double lambda,
                                             const DyadicOptions& opt, const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(lambda > 0)) fail(Errc::InvalidArgument, "lambda must be positive");
  Parameters P = P0;
  P.p_weak = weak_exponent(P.d, P.alpha, P.beta);
  if (!(P.alpha > P.alpha_lower()))
    fail(Errc::InadmissibleAlpha, "tail series diverges: need alpha > (d - beta)/2");
  if (!(P.alpha < P.alpha_upper()))
    fail(Errc::InadmissibleAlpha, "low-frequency series diverges: need alpha < d - beta/2");
  if (P.d != spec.d) fail(Errc::DimensionMismatch, "parameters and measure disagree on d");

  ExperimentRecord rec("dyadic", spec.name(), ctx.seed);
  add_params(rec, P);
  rec.param("lambda", lambda);

  const AtomicMeasure mu = spec.build();
  const double mass = total_variation(mu);
  if (mass == 0) fail(Errc::InvalidArgument, "N0 is undefined for the zero measure");
  const BesovResult B = besov_profile(mu, P.beta, resolved_time_grid(mu), ctx.ex);
  rec.scalar("total_variation", mass);
  rec.scalar("besov", B.value);
  rec.stability("besov_refinement", B.stability);

  const double a = 2 * P.alpha + P.beta;
  const double n0 = std::log2(std::pow(lambda, -2 / a) * std::pow(mass * B.value, 1 / a));
  rec.scalar("N0", n0);
  const int k0 = static_cast<int>(std::floor(n0));
  const int k_lo = k0 - 60, k_hi = k0 + opt.sum_margin;

  auto g = [&](double r) { return spec.modulus(r) * std::pow(2 * pi * r, -P.alpha); };
  const int nk = k_hi - k_lo + 1;
  std::vector<double> T1(nk), T2(nk), vol(nk);
  ctx.ex.for_chunks(nk, 1, [&](std::size_t, std::size_t b, std::size_t) {
    const int k = k_lo + static_cast<int>(b);
    const auto I = annulus_integrals(g, P.d, std::ldexp(1.0, k - 1), std::ldexp(1.0, k), lambda);
    T1[b] = I.l1 / lambda;
    T2[b] = I.l2 / (lambda * lambda);
    vol[b] = I.volume_above;
  });

  auto& s1 = rec.series("I1_term", "k");
  auto& s2 = rec.series("I2_term", "k");
  for (int i = 0; i < nk; ++i) {
    const int k = k_lo + i;
    if (k < k0 - opt.sum_margin) continue;
    s1.x.push_back(k), s1.y.push_back(T1[i]);
    s2.x.push_back(k), s2.y.push_back(T2[i]);
  }

  // growth of the I1 terms up to N0, decay of the I2 terms beyond it
  std::vector<double> k1, y1, k2, y2;
  for (int k = k0 - opt.fit_levels + 1; k <= k0; ++k) k1.push_back(k), y1.push_back(std::log2(T1[k - k_lo]));
  for (int k = k0 + 1; k <= k0 + opt.fit_levels; ++k) k2.push_back(k), y2.push_back(std::log2(T2[k - k_lo]));
  const LinearFit f1 = fit_line(k1, y1), f2 = fit_line(k2, y2);
  const double grow = P.d - P.alpha - P.beta / 2, decay = -(2 * P.alpha - (P.d - P.beta));
  rec.scalar("I1_slope", f1.slope);
  rec.scalar("I1_slope_predicted", grow);
  rec.scalar("I1_fit_residual", f1.rms);
  rec.scalar("I2_slope", f2.slope);
  rec.scalar("I2_slope_predicted", decay);
  rec.scalar("I2_fit_residual", f2.rms);
  const double e1 = std::abs(f1.slope - grow) / std::abs(grow), e2 = std::abs(f2.slope - decay) / std::abs(decay);
  rec.check("I1_growth_exponent", e1 <= ctx.th.exponent_rel_tol, f1.slope, grow, ctx.th.exponent_rel_tol,
            "relative error " + fmt(e1));
  rec.check("I2_decay_exponent", e2 <= ctx.th.exponent_rel_tol, f2.slope, decay, ctx.th.exponent_rel_tol,
            "relative error " + fmt(e2));

  // I1(K) = sum_{k<=K} T1, I2(K) = sum_{k>K} T2. The split minimizing I1 + I2 is the
  // balance point; where the two cumulative sums cross is kept for reference.
  std::vector<double> c1(nk), c2(nk);
  for (int i = 0; i < nk; ++i) c1[i] = T1[i] + (i ? c1[i - 1] : 0.0);
  for (int i = nk - 1; i >= 0; --i) c2[i] = (i + 1 < nk ? T2[i + 1] + c2[i + 1] : 0.0);
  const int i_lo = k0 - opt.sum_margin - k_lo, i_hi = nk - 2;
  int best = i_lo;
  for (int i = i_lo; i <= i_hi; ++i)
    if (c1[i] + c2[i] < c1[best] + c2[best]) best = i;
  double cross = std::nan("");
  for (int i = i_lo; i < i_hi; ++i) {
    const double d0 = std::log(c1[i] / c2[i]), d1 = std::log(c1[i + 1] / c2[i + 1]);
    if (d0 <= 0 && d1 > 0) {
      cross = k_lo + i + d0 / (d0 - d1);
      break;
    }
  }
  const double offset = (k_lo + best) - n0;
  rec.scalar("optimal_split", k_lo + best);
  rec.scalar("balance_offset", offset);
  if (std::isfinite(cross)) rec.scalar("cumulative_crossing_offset", cross - n0);
  rec.check("balance_near_N0", std::abs(offset) <= ctx.th.balance_levels, offset, 0.0, ctx.th.balance_levels,
            "split minimizing I1 + I2, minus N0");

  const int split = k0 - k_lo;
  const double bound = c1[split] + c2[split];
  double volume = 0;
  for (double v : vol) volume += v;
  rec.scalar("chebyshev_bound", bound);
  rec.scalar("superlevel_volume", volume);
  rec.check("bound_dominates_volume", bound >= volume, bound, volume, 0.0, "I1 + I2 at the split N0");
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- annular L2 averages

ExperimentRecord run_l2_average_scan(const MeasureSpec& spec, double beta, const std::vector<double>& radii,
                                     const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  if (radii.size() < 2) fail(Errc::InvalidArgument, "need at least two radii");
  ExperimentRecord rec("l2_average", spec.name(), ctx.seed);
  rec.param("d", spec.d);
  rec.param("beta", beta);
  const AtomicMeasure mu = spec.build();
  const double mass = total_variation(mu);
  const BesovResult B = besov_profile(mu, beta, resolved_time_grid(mu), ctx.ex);
  rec.scalar("total_variation", mass);
  rec.scalar("besov", B.value);
  rec.stability("besov_refinement", B.stability);
  auto& s = rec.series("average", "R");
  std::vector<double> vals;
  for (double R : radii) {
    const double v = annular_l2_average(mu, beta, R, PairSum{}, ctx.ex);
    s.x.push_back(R), s.y.push_back(v);
    vals.push_back(v);
  }
  const double top = *std::max_element(vals.begin(), vals.end());
  rec.scalar("average_max", top);
  rec.scalar("average_over_mass_besov", top / (mass * B.value));
  const LinearFit f = fit_loglog(radii, vals);
  rec.scalar("slope", f.slope);
  rec.scalar("fit_residual", f.rms);
  rec.check("bounded", std::abs(f.slope) <= ctx.th.bounded_slope, f.slope, 0.0, ctx.th.bounded_slope,
            "log-log slope of the average against R");
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

// ---- Morrey to Besov embedding

ExperimentRecord run_embedding_check(const std::vector<MeasureSpec>& family, const RunContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentRecord rec("embedding", "family", ctx.seed);
  std::array<double, kMaxDim + 1> c{}, c_ref{};
  for (const auto& spec : family) {
    const AtomicMeasure mu = spec.build();
    const double beta = spec.natural_beta();
    const BesovResult B = besov_profile(mu, beta, resolved_time_grid(mu), ctx.ex);
    const MorreyResult M = morrey_profile(mu, beta, {}, ctx.ex);
    const std::string n = spec.name();
    rec.scalar(n + ".beta", beta);
    rec.scalar(n + ".besov", B.value);
    rec.scalar(n + ".besov_refined", B.refined_value);
    rec.scalar(n + ".morrey", M.value);
    rec.scalar(n + ".morrey_refined", M.refined_value);
    rec.stability(n + ".besov", B.stability);
    rec.stability(n + ".morrey", M.stability);
    c[spec.d] = std::max(c[spec.d], B.value / M.value);
    c_ref[spec.d] = std::max(c_ref[spec.d], B.refined_value / M.refined_value);
  }
  for (int d = 1; d <= kMaxDim; ++d) {
    if (c[d] == 0) continue;
    const std::string n = "C_" + std::to_string(d);
    rec.scalar(n, c[d]);
    rec.scalar(n + "_refined", c_ref[d]);
    const double change = std::abs(c_ref[d] / c[d] - 1);
    rec.stability(n, change);
    rec.check(n + "_stable", change <= ctx.th.embedding_stability, change, 0.0, ctx.th.embedding_stability,
              "relative change of max besov/morrey under grid refinement");
  }
  rec.set_wall_seconds(elapsed(t0));
  return rec;
}

double bessel_remainder_constant(BesselOrder nu, double x_min, double x_max, int points) {
  double c = 0;
  const double q = std::log(x_max / x_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = x_min * std::exp(q * i);
    c = std::max(c, std::abs(bessel_remainder(nu, x)) * std::pow(x, 1.5));
  }
  return c;
}

}  // namespace fdecay
