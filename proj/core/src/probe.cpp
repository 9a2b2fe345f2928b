#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fdecay/errors.hpp"
#include "fdecay/transforms.hpp"

namespace fdecay {

namespace {

constexpr double kCutoff = 12.0;  // Gaussian truncation radius in units of sqrt(t)
constexpr long kMaxCells = 1L << 20;

void check_time(double t) {
  if (!(t > 0)) fail(Errc::NonpositiveTime, "heat time must be positive");
}

}  // namespace

HeatConvolver::HeatConvolver(const AtomicMeasure& mu, double t) : d_(mu.dim()), ncomp_(1), t_(t) {
  check_time(t);
  build(mu.coords(), mu.weights());
}

HeatConvolver::HeatConvolver(const VectorMeasure& mu, double t)
    : d_(mu.dim()), ncomp_(mu.dim()), t_(t) {
  check_time(t);
  build(mu.coords(), mu.flat_weights());
}

void HeatConvolver::build(const std::vector<double>& coords, const std::vector<cplx>& w) {
  const std::size_t n = coords.size() / d_;
  const double cut = kCutoff * std::sqrt(t_);
  cutoff2_ = cut * cut;
  cell_ = cut;
  origin_ = Point(d_);
  Point hi(d_);
  for (int k = 0; k < d_; ++k) {
    origin_[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < d_; ++k) {
      origin_[k] = std::min(origin_[k], coords[i * d_ + k]);
      hi[k] = std::max(hi[k], coords[i * d_ + k]);
    }
  if (n == 0)
    for (int k = 0; k < d_; ++k) origin_[k] = hi[k] = 0;
  // keep the linearized key inside 64 bits
  for (int k = 0; k < d_; ++k) cell_ = std::max(cell_, (hi[k] - origin_[k]) / (kMaxCells - 2));
  for (int k = 0; k < d_; ++k) ncell_[k] = static_cast<long>((hi[k] - origin_[k]) / cell_) + 1;

  std::vector<std::uint64_t> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t kk = 0;
    for (int k = 0; k < d_; ++k) {
      long c = static_cast<long>((coords[i * d_ + k] - origin_[k]) / cell_);
      c = std::clamp(c, 0L, ncell_[k] - 1);
      kk = kk * static_cast<std::uint64_t>(ncell_[k]) + static_cast<std::uint64_t>(c);
    }
    key[i] = kk;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  keys_.resize(n);
  coords_.resize(n * d_);
  weights_.resize(n * ncomp_);
  for (std::size_t i = 0; i < n; ++i) {
    keys_[i] = key[perm[i]];
    for (int k = 0; k < d_; ++k) coords_[i * d_ + k] = coords[perm[i] * d_ + k];
    for (int c = 0; c < ncomp_; ++c) weights_[i * ncomp_ + c] = w[perm[i] * ncomp_ + c];
  }
}

void HeatConvolver::accumulate(std::span<const double> x, cplx* out) const {
  for (int c = 0; c < ncomp_; ++c) out[c] = 0;
  if (keys_.empty()) return;
  std::array<long, kMaxDim> cx{};
  for (int k = 0; k < d_; ++k) {
    const double u = (x[k] - origin_[k]) / cell_;
    if (u < -2.0 || u > ncell_[k] + 1.0) return;  // farther than one cell from every atom
    cx[k] = static_cast<long>(std::floor(u));
  }
  const double inv4t = 1.0 / (4 * t_);
  // iterate over neighbour cells of the leading axes; the last axis is a contiguous key range
  std::array<int, kMaxDim> off{};
  for (int k = 0; k < d_ - 1; ++k) off[k] = -1;
  while (true) {
    bool ok = true;
    std::uint64_t prefix = 0;
    for (int k = 0; k < d_ - 1; ++k) {
      const long c = cx[k] + off[k];
      if (c < 0 || c >= ncell_[k]) {
        ok = false;
        break;
      }
      prefix = prefix * static_cast<std::uint64_t>(ncell_[k]) + static_cast<std::uint64_t>(c);
    }
    const long last = ncell_[d_ - 1];
    const long lo = std::max(0L, cx[d_ - 1] - 1), hi = std::min(last - 1, cx[d_ - 1] + 1);
    if (ok && lo <= hi) {
      const std::uint64_t klo = prefix * last + lo, khi = prefix * last + hi;
      auto b = std::lower_bound(keys_.begin(), keys_.end(), klo);
      auto e = std::upper_bound(b, keys_.end(), khi);
      for (auto it = b; it != e; ++it) {
        const std::size_t i = static_cast<std::size_t>(it - keys_.begin());
        double r2 = 0;
        for (int k = 0; k < d_; ++k) {
          const double dx = x[k] - coords_[i * d_ + k];
          r2 += dx * dx;
        }
        if (r2 >= cutoff2_) continue;
        const double g = std::exp(-r2 * inv4t);
        for (int c = 0; c < ncomp_; ++c) out[c] += weights_[i * ncomp_ + c] * g;
      }
    }
    int k = 0;
    while (k < d_ - 1 && ++off[k] > 1) off[k++] = -1;
    if (k >= d_ - 1) break;
  }
  const double norm = std::pow(4 * std::numbers::pi * t_, -0.5 * d_);
  for (int c = 0; c < ncomp_; ++c) out[c] *= norm;
}

double HeatConvolver::magnitude(std::span<const double> x) const {
  std::array<cplx, kMaxDim> buf;
  accumulate(x, buf.data());
  double s = 0;
  for (int c = 0; c < ncomp_; ++c) s += std::norm(buf[c]);
  return std::sqrt(s);
}

cplx HeatConvolver::value(std::span<const double> x) const {
  if (ncomp_ != 1) fail(Errc::InvalidArgument, "value() is for scalar measures");
  cplx out;
  accumulate(x, &out);
  return out;
}

cplx heat_convolve(const AtomicMeasure& mu, double t, std::span<const double> x) {
  return HeatConvolver(mu, t).value(x);
}

double heat_convolve(const VectorMeasure& mu, double t, std::span<const double> x) {
  return HeatConvolver(mu, t).magnitude(x);
}

// ---- spacing

double median_spacing(const std::vector<double>& coords, int d) {
  const std::size_t n = coords.size() / d;
  if (n < 2) return std::numeric_limits<double>::infinity();
  Point lo(d), hi(d);
  for (int k = 0; k < d; ++k) lo[k] = hi[k] = coords[k];
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], coords[i * d + k]);
      hi[k] = std::max(hi[k], coords[i * d + k]);
    }
  double ext = 0;
  for (int k = 0; k < d; ++k) ext = std::max(ext, hi[k] - lo[k]);
  if (ext == 0) return std::numeric_limits<double>::infinity();
  const double cell = std::max(ext / std::pow(static_cast<double>(n), 1.0 / d), ext / 4096);
  std::array<long, kMaxDim> nc{};
  for (int k = 0; k < d; ++k) nc[k] = static_cast<long>((hi[k] - lo[k]) / cell) + 1;
  auto cell_of = [&](const double* p, std::array<long, kMaxDim>& c) {
    for (int k = 0; k < d; ++k) c[k] = std::min(nc[k] - 1, static_cast<long>((p[k] - lo[k]) / cell));
  };
  auto key_of = [&](const std::array<long, kMaxDim>& c) {
    std::uint64_t kk = 0;
    for (int k = 0; k < d; ++k) kk = kk * static_cast<std::uint64_t>(nc[k]) + static_cast<std::uint64_t>(c[k]);
    return kk;
  };
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
  std::array<long, kMaxDim> c{};
  for (std::size_t i = 0; i < n; ++i) {
    cell_of(&coords[i * d], c);
    keyed[i] = {key_of(c), i};
  }
  std::sort(keyed.begin(), keyed.end());

  const std::size_t samples = std::min<std::size_t>(n, 2048);
  std::vector<double> nn;
  nn.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = s * n / samples;
    const double* p = &coords[i * d];
    cell_of(p, c);
    double best2 = std::numeric_limits<double>::infinity();
    auto visit = [&](std::size_t j) {
      double r2 = 0;
      for (int k = 0; k < d; ++k) {
        const double dx = p[k] - coords[j * d + k];
        r2 += dx * dx;
      }
      if (r2 > 0 && r2 < best2) best2 = r2;
    };
    bool done = false;
    for (long ring = 0; ring <= 8 && !done; ++ring) {
      std::array<long, kMaxDim> o{};
      for (int k = 0; k < d; ++k) o[k] = -ring;
      while (true) {
        long cheb = 0;
        bool inside = true;
        std::array<long, kMaxDim> q{};
        for (int k = 0; k < d; ++k) {
          cheb = std::max(cheb, std::abs(o[k]));
          q[k] = c[k] + o[k];
          if (q[k] < 0 || q[k] >= nc[k]) inside = false;
        }
        if (cheb == ring && inside) {
          const auto kk = key_of(q);
          auto it = std::lower_bound(keyed.begin(), keyed.end(), std::make_pair(kk, std::size_t{0}));
          for (; it != keyed.end() && it->first == kk; ++it) visit(it->second);
        }
        int k = 0;
        while (k < d && ++o[k] > ring) o[k++] = -ring;
        if (k == d) break;
      }
      if (best2 <= (ring * cell) * (ring * cell)) done = true;
    }
    if (!done)
      for (std::size_t j = 0; j < n; ++j) visit(j);
    if (std::isfinite(best2)) nn.push_back(std::sqrt(best2));
  }
  if (nn.empty()) return std::numeric_limits<double>::infinity();
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  return nn[nn.size() / 2];
}

// ---- probe sets

ProbeSet::ProbeSet(int d, std::vector<double> flat, bool refine)
    : d_(d), pts_(std::move(flat)), refine_(refine) {}

ProbeSet ProbeSet::automatic(const std::vector<double>& support, int d, double t, double atom_spacing,
                             const ProbeOptions& opt) {
  check_time(t);
  const std::size_t n = support.size() / d;
  if (n == 0) fail(Errc::EmptyProbeSet, "measure has no atoms");
  const double s = std::sqrt(t);
  const int reach = static_cast<int>(std::ceil(opt.reach));
  Point lo(d);
  for (int k = 0; k < d; ++k) lo[k] = support[k];
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) lo[k] = std::min(lo[k], support[i * d + k]);
  for (int k = 0; k < d; ++k) lo[k] -= (reach + 1) * s;

  // coarse cells of side sqrt(t) holding atoms, dilated by `reach` cells
  std::vector<std::array<long, kMaxDim>> occupied(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) occupied[i][k] = static_cast<long>(std::floor((support[i * d + k] - lo[k]) / s));
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  std::vector<std::array<long, kMaxDim>> cells;
  for (const auto& c : occupied) {
    std::array<long, kMaxDim> o{};
    for (int k = 0; k < d; ++k) o[k] = -reach;
    while (true) {
      std::array<long, kMaxDim> q{};
      for (int k = 0; k < d; ++k) q[k] = c[k] + o[k];
      cells.push_back(q);
      int k = 0;
      while (k < d && ++o[k] > reach) o[k++] = -reach;
      if (k == d) break;
    }
    if (cells.size() > 8 * opt.max_grid) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  int per = std::max(1, static_cast<int>(std::lround(1.0 / opt.pitch_factor)));
  while (per > 1 && cells.size() * static_cast<std::size_t>(std::pow(per, d)) > opt.max_grid) per /= 2;
  std::vector<double> pts;
  const std::size_t sub = static_cast<std::size_t>(std::pow(per, d));
  pts.reserve((cells.size() * sub + n) * d);
  for (const auto& c : cells) {
    std::array<int, kMaxDim> o{};
    while (true) {
      for (int k = 0; k < d; ++k) pts.push_back(lo[k] + s * (c[k] + (o[k] + 0.5) / per));
      int k = 0;
      while (k < d && ++o[k] >= per) o[k++] = 0;
      if (k == d) break;
    }
  }
  // spiky regime: the field peaks on the atoms themselves
  if (s < 4 * atom_spacing) {
    const std::size_t stride = std::max<std::size_t>(1, n / opt.max_grid);
    for (std::size_t i = 0; i < n; i += stride)
      for (int k = 0; k < d; ++k) pts.push_back(support[i * d + k]);
  }
  ProbeSet P(d, std::move(pts), opt.refine);
  P.pitch_ = s / per;
  return P;
}

namespace {

struct Candidate {
  double value;
  std::size_t index;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

double sup_impl(const HeatConvolver& hc, const ProbeSet& P, const Executor& ex, int top) {
  if (P.empty()) fail(Errc::EmptyProbeSet, "probe set is empty");
  if (P.dim() != hc.dim()) fail(Errc::DimensionMismatch, "probe dimension");
  const std::size_t chunk = 512;
  const std::size_t nchunks = Executor::chunk_count(P.size(), chunk);
  const std::size_t keep = static_cast<std::size_t>(std::max(1, top));
  std::vector<std::vector<Candidate>> best(nchunks);
  ex.for_chunks(P.size(), chunk, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto& v = best[c];
    for (std::size_t i = b; i < e; ++i) v.push_back({hc.magnitude(P.point(i)), i});
    std::sort(v.begin(), v.end(), better);
    if (v.size() > keep) v.resize(keep);
  });
  std::vector<Candidate> all;
  for (auto& v : best) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), better);
  if (all.size() > keep) all.resize(keep);
  double result = all.front().value;
  if (!P.refine() || P.pitch() <= 0) return result;

  const int d = P.dim();
  const double tol = 1e-4 * P.pitch();
  std::vector<double> refined(all.size(), 0.0);
  ex.for_chunks(all.size(), 1, [&](std::size_t, std::size_t b, std::size_t) {
    Point x = Point::from(P.point(all[b].index));
    double fx = all[b].value;
    double step = 0.5 * P.pitch();
    for (int it = 0; it < 200 && step > tol; ++it) {
      bool moved = false;
      for (int k = 0; k < d; ++k)
        for (double sgn : {1.0, -1.0}) {
          Point y = x;
          y[k] += sgn * step;
          const double fy = hc.magnitude(y);
          if (fy > fx) fx = fy, x = y, moved = true;
        }
      if (!moved) step *= 0.5;
    }
    refined[b] = fx;
  });
  for (double v : refined) result = std::max(result, v);
  return result;
}

}  // namespace

double sup_heat_convolve(const AtomicMeasure& mu, double t, const ProbeSet& probe, const Executor& ex) {
  return sup_impl(HeatConvolver(mu, t), probe, ex, 8);
}

double sup_heat_convolve(const VectorMeasure& mu, double t, const ProbeSet& probe, const Executor& ex) {
  return sup_impl(HeatConvolver(mu, t), probe, ex, 8);
}

double sup_heat_convolve(const AtomicMeasure& mu, double t, const Executor& ex, const ProbeOptions& opt) {
  return HeatSupEvaluator(mu, ex, opt)(t);
}

double sup_heat_convolve(const VectorMeasure& mu, double t, const Executor& ex, const ProbeOptions& opt) {
  return HeatSupEvaluator(mu, ex, opt)(t);
}

HeatSupEvaluator::HeatSupEvaluator(const AtomicMeasure& mu, const Executor& ex, ProbeOptions opt)
    : scalar_(&mu), ex_(ex), opt_(opt), spacing_(median_spacing(mu.coords(), mu.dim())) {}

HeatSupEvaluator::HeatSupEvaluator(const VectorMeasure& mu, const Executor& ex, ProbeOptions opt)
    : vector_(&mu), ex_(ex), opt_(opt), spacing_(median_spacing(mu.coords(), mu.dim())) {}

double HeatSupEvaluator::operator()(double t) const {
  if (scalar_) {
    const ProbeSet P = ProbeSet::automatic(scalar_->coords(), scalar_->dim(), t, spacing_, opt_);
    return sup_impl(HeatConvolver(*scalar_, t), P, ex_, opt_.refine_top);
  }
  const ProbeSet P = ProbeSet::automatic(vector_->coords(), vector_->dim(), t, spacing_, opt_);
  return sup_impl(HeatConvolver(*vector_, t), P, ex_, opt_.refine_top);
}

}  // namespace fdecay
