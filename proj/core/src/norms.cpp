#include "fdecay/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"

namespace fdecay {

// ---- time grids and Besov

void TimeGrid::validate() const {
  if (!(t_min > 0) || !(t_max >= t_min) || !(ratio > 1))
    fail(Errc::InvalidArgument, "time grid needs 0 < t_min <= t_max and ratio > 1");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> ts;
  const double steps = std::log(t_max / t_min) / std::log(ratio);
  const long n = static_cast<long>(std::floor(steps + 1e-9));
  for (long k = 0; k <= n; ++k) ts.push_back(t_min * std::pow(ratio, static_cast<double>(k)));
  return ts;
}

TimeGrid TimeGrid::refined() const { return {t_min, t_max, std::sqrt(ratio)}; }

namespace {

template <class M>
BesovResult besov_impl(const M& mu, double beta, const TimeGrid& G, const Executor& ex,
                       const ProbeOptions& probe) {
  BesovResult res;
  if (mu.empty()) return res;
  const HeatSupEvaluator sup(mu, ex, probe);
  const auto ts = G.refined().times();
  const double expo = 0.5 * (mu.dim() - beta);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double v = std::pow(ts[i], expo) * sup(ts[i]);
    res.profile.emplace_back(ts[i], v);
    if (i % 2 == 0 && v > res.value) res.value = v, res.t_at_max = ts[i];
    res.refined_value = std::max(res.refined_value, v);
  }
  res.stability = res.refined_value > 0 ? (res.refined_value - res.value) / res.refined_value : 0.0;
  return res;
}

template <class M>
double besov_plain(const M& mu, double beta, const TimeGrid& G, const Executor& ex) {
  if (mu.empty()) return 0;
  const HeatSupEvaluator sup(mu, ex);
  double best = 0;
  for (double t : G.times()) best = std::max(best, std::pow(t, 0.5 * (mu.dim() - beta)) * sup(t));
  return best;
}

TimeGrid resolved(const std::vector<double>& coords, int d, TimeGrid G) {
  const double h = median_spacing(coords, d);
  if (std::isfinite(h)) G.t_min = std::max(G.t_min, h * h);
  if (G.t_max < G.t_min) G.t_max = G.t_min;
  return G;
}

}  // namespace

double besov_norm(const AtomicMeasure& mu, double beta, const TimeGrid& G, const Executor& ex) {
  return besov_plain(mu, beta, G, ex);
}
double besov_norm(const VectorMeasure& mu, double beta, const TimeGrid& G, const Executor& ex) {
  return besov_plain(mu, beta, G, ex);
}
BesovResult besov_profile(const AtomicMeasure& mu, double beta, const TimeGrid& G, const Executor& ex,
                          const ProbeOptions& probe) {
  return besov_impl(mu, beta, G, ex, probe);
}
BesovResult besov_profile(const VectorMeasure& mu, double beta, const TimeGrid& G, const Executor& ex,
                          const ProbeOptions& probe) {
  return besov_impl(mu, beta, G, ex, probe);
}

TimeGrid resolved_time_grid(const AtomicMeasure& mu, TimeGrid G) { return resolved(mu.coords(), mu.dim(), G); }
TimeGrid resolved_time_grid(const VectorMeasure& mu, TimeGrid G) { return resolved(mu.coords(), mu.dim(), G); }

// ---- Morrey

namespace {

// per-radius max over centers of |mu|(B(x,r)) / r^beta
std::vector<double> morrey_by_radius(const AtomicMeasure& mu, double beta, std::span<const double> centers,
                                     std::span<const double> radii, const Executor& ex) {
  const int d = mu.dim();
  const std::size_t nc = centers.size() / d, nr = radii.size();
  std::vector<double> scale(nr);
  for (std::size_t k = 0; k < nr; ++k) scale[k] = beta == 0.0 ? 1.0 : std::pow(radii[k], -beta);
  std::vector<double> absw(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) absw[j] = std::abs(mu.weight(j));
  const std::size_t chunk = 32;
  std::vector<std::vector<double>> part(Executor::chunk_count(nc, chunk), std::vector<double>(nr, 0.0));
  ex.for_chunks(nc, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::vector<double> hist(nr + 1);
    for (std::size_t i = b; i < e; ++i) {
      std::fill(hist.begin(), hist.end(), 0.0);
      auto x = centers.subspan(i * d, d);
      for (std::size_t j = 0; j < mu.size(); ++j) {
        double r2 = 0;
        auto y = mu.location(j);
        for (int k = 0; k < d; ++k) r2 += (x[k] - y[k]) * (x[k] - y[k]);
        // open ball: atom counts for every radius strictly larger than its distance
        const auto bin = std::upper_bound(radii.begin(), radii.end(), std::sqrt(r2)) - radii.begin();
        hist[bin] += absw[j];
      }
      double mass = 0;
      for (std::size_t k = 0; k < nr; ++k) {
        mass += hist[k];
        part[c][k] = std::max(part[c][k], mass * scale[k]);
      }
    }
  });
  std::vector<double> out(nr, 0.0);
  for (const auto& p : part)
    for (std::size_t k = 0; k < nr; ++k) out[k] = std::max(out[k], p[k]);
  return out;
}

std::vector<double> geometric(double lo, double hi, double ratio) {
  std::vector<double> r;
  const long n = static_cast<long>(std::floor(std::log(hi / lo) / std::log(ratio) + 1e-9));
  for (long k = 0; k <= n; ++k) r.push_back(lo * std::pow(ratio, static_cast<double>(k)));
  return r;
}

}  // namespace

double morrey_norm(const AtomicMeasure& mu, double beta, std::span<const double> centers,
                   std::span<const double> radii, const Executor& ex) {
  if (radii.empty() || centers.empty()) fail(Errc::InvalidArgument, "Morrey norm needs centers and radii");
  if (!std::is_sorted(radii.begin(), radii.end())) fail(Errc::InvalidArgument, "radii must be ascending");
  const auto per = morrey_by_radius(mu, beta, centers, radii, ex);
  return *std::max_element(per.begin(), per.end());
}

std::vector<double> default_morrey_radii(const AtomicMeasure& mu, const MorreyOptions& opt) {
  const double h = median_spacing(mu.coords(), mu.dim());
  const auto [lo, hi] = mu.bounding_box();
  double diam = 0;
  for (int k = 0; k < mu.dim(); ++k) diam += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  diam = std::sqrt(diam);
  if (!std::isfinite(h) || diam == 0) return geometric(1e-3, 1.0, opt.ratio);
  double r_lo = opt.min_radius_spacings * h, r_hi = 2 * diam;
  if (r_lo >= r_hi) r_lo = r_hi / 16;
  return geometric(r_lo, r_hi, opt.ratio);
}

MorreyResult morrey_profile(const AtomicMeasure& mu, double beta, const MorreyOptions& opt, const Executor& ex) {
  MorreyResult res;
  if (mu.empty()) return res;
  MorreyOptions fine = opt;
  fine.ratio = std::sqrt(opt.ratio);
  const auto radii = default_morrey_radii(mu, fine);
  const auto per = morrey_by_radius(mu, beta, mu.coords(), radii, ex);
  for (std::size_t k = 0; k < per.size(); ++k) {
    if (k % 2 == 0 && per[k] > res.value) res.value = per[k], res.radius_at_max = radii[k];
    res.refined_value = std::max(res.refined_value, per[k]);
  }
  res.stability = res.refined_value > 0 ? (res.refined_value - res.value) / res.refined_value : 0.0;
  return res;
}

// ---- rearrangement norms

double LowFrequencyCorrection::volume_above(double t) const {
  if (xi_min <= 0) return 0;
  if (t <= 0) return ball_volume(d) * std::pow(xi_min, d);
  const double r = std::pow(mass / t, 1.0 / alpha) / (2 * std::numbers::pi);
  return ball_volume(d) * std::pow(std::min(xi_min, r), d);
}

namespace {

struct Sorted {
  std::vector<double> a;    // magnitudes, descending
  std::vector<double> cum;  // cumulative volume
};

Sorted sort_field(const SampledField& F) {
  if (F.empty()) fail(Errc::EmptyField, "field has no samples");
  const std::size_t n = F.size();
  std::vector<std::pair<double, std::size_t>> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = {std::abs(F.value(i)), i};
  std::sort(m.begin(), m.end(), [](const auto& x, const auto& y) {
    return x.first > y.first || (x.first == y.first && x.second < y.second);
  });
  Sorted s;
  s.a.resize(n);
  s.cum.resize(n);
  double c = 0;
  for (std::size_t k = 0; k < n; ++k) {
    s.a[k] = m[k].first;
    if (F.uniform()) {
      s.cum[k] = static_cast<double>(k + 1) * F.cell_volume();
    } else {
      c += F.volume(m[k].second);
      s.cum[k] = c;
    }
  }
  return s;
}

}  // namespace

double weak_lp_norm(const SampledField& F, double p, std::optional<LowFrequencyCorrection> lf) {
  if (!(p > 0)) fail(Errc::InvalidArgument, "exponent must be positive");
  const Sorted s = sort_field(F);
  const double ip = 1.0 / p;
  double best = 0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    const double c = s.cum[k] + (lf ? lf->volume_above(s.a[k]) : 0.0);
    best = std::max(best, s.a[k] * std::pow(c, ip));
  }
  if (lf && lf->xi_min > 0) {
    const double gamma = lf->d / lf->alpha;
    if (p > gamma * (1 + 1e-12)) return std::numeric_limits<double>::infinity();
    // where the correction stops being saturated
    const double tstar = lf->mass * std::pow(2 * std::numbers::pi * lf->xi_min, -lf->alpha);
    // samples strictly above tstar
    const auto cnt = static_cast<std::size_t>(
        std::lower_bound(s.a.begin(), s.a.end(), tstar, std::greater<double>()) - s.a.begin());
    const double c = (cnt ? s.cum[cnt - 1] : 0.0) + ball_volume(lf->d) * std::pow(lf->xi_min, lf->d);
    best = std::max(best, tstar * std::pow(c, ip));
    if (std::abs(p - gamma) <= 1e-12 * gamma) {
      // t -> infinity limit of t |{(2 pi |xi|)^{-alpha} M > t}|^{1/p}
      best = std::max(best, std::pow(ball_volume(lf->d), ip) * lf->mass / std::pow(2 * std::numbers::pi, lf->alpha));
    }
  }
  return best;
}

double lorentz_norm_pow(const SampledField& F, double p, double q) {
  if (!std::isfinite(q)) fail(Errc::QNotFinite, "Lorentz exponent q must be finite");
  if (!(p > 0) || !(q > 0)) fail(Errc::InvalidArgument, "exponents must be positive");
  const Sorted s = sort_field(F);
  const std::size_t n = s.a.size();
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double next = k + 1 < n ? s.a[k + 1] : 0.0;
    terms[k] = std::pow(s.cum[k], q / p) * (std::pow(s.a[k], q) - std::pow(next, q)) / q;
  }
  return pairwise_sum(terms);
}

double lorentz_norm(const SampledField& F, double p, double q) {
  return std::pow(lorentz_norm_pow(F, p, q), 1.0 / q);
}

double lp_norm(const SampledField& F, double p) {
  if (F.empty()) fail(Errc::EmptyField, "field has no samples");
  std::vector<double> terms(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) terms[i] = std::pow(std::abs(F.value(i)), p) * F.volume(i);
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double superlevel_volume(const SampledField& F, double t) {
  std::vector<double> terms;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (std::abs(F.value(i)) > t) terms.push_back(F.volume(i));
  return pairwise_sum(terms);
}

// ---- annular L2 averages

namespace {

double pair_sum(const AtomicMeasure& mu, double R, const Executor& ex) {
  const int d = mu.dim();
  const std::size_t n = mu.size();
  const double diag = ball_volume(d) * std::pow(R, d);
  const std::size_t chunk = 16;
  std::vector<double> part(Executor::chunk_count(n, chunk), 0.0);
  ex.for_chunks(n, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    double s = 0;
    for (std::size_t j = b; j < e; ++j) {
      const cplx wj = mu.weight(j);
      double row = std::norm(wj) * diag;
      auto x = mu.location(j);
      for (std::size_t l = j + 1; l < n; ++l) {
        auto y = mu.location(l);
        double r2 = 0;
        for (int k = 0; k < d; ++k) r2 += (x[k] - y[k]) * (x[k] - y[k]);
        row += 2 * (wj * std::conj(mu.weight(l))).real() * ball_indicator_ft(std::sqrt(r2), R, d);
      }
      s += row;
    }
    part[c] = s;
  });
  return pairwise_sum(part);
}

double lattice_l2(const AtomicMeasure& mu, double R, double h, const Executor& ex) {
  FrequencyWindow W{0.0, R, h, mu.dim()};
  LatticeOptions opt;
  opt.keep_points = false;
  const SampledField F = riesz_field(mu, 0.0, W, ex, opt);
  std::vector<double> t(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) t[i] = std::norm(F.value(i)) * F.volume(i);
  return pairwise_sum(t);
}

}  // namespace

double annular_l2_average(const AtomicMeasure& mu, double beta, double R, const L2Sampler& sampler,
                          const Executor& ex) {
  if (!(R > 0)) fail(Errc::InvalidArgument, "radius must be positive");
  const int d = mu.dim();
  double integral = 0;
  if (std::holds_alternative<PairSum>(sampler)) {
    integral = pair_sum(mu, R, ex);
  } else if (auto* L = std::get_if<LatticeSampler>(&sampler)) {
    double h = L->spacing;
    if (h <= 0) {
      const auto [lo, hi] = mu.bounding_box();
      double diam = 0;
      for (int k = 0; k < d; ++k) diam = std::max(diam, hi[k] - lo[k]);
      h = 1.0 / (8 * std::max(diam, 1.0));
    }
    const double coarse = lattice_l2(mu, R, h, ex), fine = lattice_l2(mu, R, h / 2, ex);
    if (std::abs(coarse - fine) > 0.01 * std::abs(fine))
      fail(Errc::QuadratureNotConverged, "lattice L2 integral not stable under halving the spacing");
    integral = fine;
  } else {
    const auto& mc = std::get<MonteCarloSampler>(sampler);
    const SampledField F = riesz_field_montecarlo(mu, 0.0, {0.0, R}, mc.n, mc.seed, ex, false);
    double s = 0, s2 = 0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double v = std::norm(F.value(i));
      s += v, s2 += v * v;
    }
    const double n = static_cast<double>(F.size());
    const double mean = s / n, var = std::max(0.0, s2 / n - mean * mean);
    if (n < 2 || std::sqrt(var / n) > 0.01 * mean)
      fail(Errc::QuadratureNotConverged, "Monte Carlo L2 integral has relative standard error above 1%");
    integral = mean * F.total_volume();
  }
  return integral / std::pow(R, d - beta);
}

// ---- interpolation inequality

double heat_lq_norm(const AtomicMeasure& mu, double t, double q, const Executor& ex) {
  if (!(t > 0)) fail(Errc::NonpositiveTime, "heat time must be positive");
  if (mu.empty()) return 0;
  const int d = mu.dim();
  const HeatConvolver hc(mu, t);
  const auto [lo, hi] = mu.bounding_box();
  const double s = std::sqrt(t);
  auto integral = [&](double h) {
    std::array<long, kMaxDim> n{};
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) {
      n[k] = static_cast<long>(std::ceil((hi[k] - lo[k] + 20 * s) / h));
      total *= static_cast<std::size_t>(n[k]);
    }
    if (total > 50'000'000) fail(Errc::QuadratureNotConverged, "Lq quadrature grid too large");
    const std::size_t chunk = 4096;
    std::vector<double> part(Executor::chunk_count(total, chunk));
    ex.for_chunks(total, chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
      double acc = 0;
      Point x(d);
      for (std::size_t i = b; i < e; ++i) {
        std::size_t r = i;
        for (int k = d - 1; k >= 0; --k) {
          x[k] = lo[k] - 10 * s + h * (static_cast<double>(r % n[k]) + 0.5);
          r /= n[k];
        }
        acc += std::pow(std::abs(hc.value(x)), q);
      }
      part[c] = acc;
    });
    return pairwise_sum(part) * std::pow(h, d);
  };
  const double coarse = integral(s / 3), fine = integral(s / 6);
  if (std::abs(coarse - fine) > 1e-6 * std::abs(fine))
    fail(Errc::QuadratureNotConverged, "Lq quadrature not stable under halving the pitch");
  return std::pow(fine, 1.0 / q);
}

InterpolationBound lq_interpolated_bound(const AtomicMeasure& mu, double beta, double q, double t,
                                         const TimeGrid& G, const Executor& ex) {
  if (!(q >= 1)) fail(Errc::InvalidArgument, "q must be at least 1");
  const int d = mu.dim();
  const double tv = total_variation(mu);
  const double at_t = std::pow(t, 0.5 * (d - beta)) * sup_heat_convolve(mu, t, ex);
  const double besov = std::max(besov_norm(mu, beta, G, ex), at_t);
  InterpolationBound b;
  if (std::isinf(q)) {
    b.lhs = at_t;
    b.rhs = besov;
    return b;
  }
  b.lhs = std::pow(t, 0.5 * (d - beta) * (1 - 1 / q)) * heat_lq_norm(mu, t, q, ex);
  b.rhs = std::pow(tv, 1 / q) * std::pow(besov, 1 - 1 / q);
  return b;
}

}  // namespace fdecay
