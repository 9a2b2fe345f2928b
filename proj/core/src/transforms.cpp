#include "fdecay/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"

namespace fdecay {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

inline cplx unit_phase(double theta) {
  theta -= std::nearbyint(theta);
  return {std::cos(two_pi * theta), -std::sin(two_pi * theta)};
}

struct Row {
  Point base;  // last coordinate unused
  long k_lo, k_hi;
  std::size_t offset;  // first output slot
  std::size_t count;
};

double lattice_coord(double h, long n) { return h * (static_cast<double>(n) + 0.5); }

// Rows of the cell-centred lattice along the last axis that meet the shell.
std::vector<Row> lattice_rows(const FrequencyWindow& W, bool orthant) {
  const int d = W.d;
  const double h = W.spacing;
  const long n = static_cast<long>(std::ceil(W.xi_max / h));
  const long lo = orthant ? 0 : -n;
  const double rmax2 = W.xi_max * W.xi_max, rmin2 = W.xi_min * W.xi_min;
  std::vector<Row> rows;
  std::array<long, kMaxDim> idx{};
  for (int k = 0; k < d - 1; ++k) idx[k] = lo;
  std::size_t offset = 0;
  while (true) {
    Point base(d);
    double s2 = 0;
    for (int k = 0; k < d - 1; ++k) {
      base[k] = lattice_coord(h, idx[k]);
      s2 += base[k] * base[k];
    }
    if (s2 <= rmax2) {
      const double reach = std::sqrt(rmax2 - s2);
      long k_lo = static_cast<long>(std::ceil(-reach / h - 0.5));
      long k_hi = static_cast<long>(std::floor(reach / h - 0.5));
      if (orthant) k_lo = std::max(k_lo, 0L);
      std::size_t count = 0;
      for (long k = k_lo; k <= k_hi; ++k) {
        const double z = lattice_coord(h, k), r2 = s2 + z * z;
        if (r2 >= rmin2 && r2 <= rmax2) ++count;
      }
      if (count > 0) {
        rows.push_back({base, k_lo, k_hi, offset, count});
        offset += count;
      }
    }
    int k = 0;
    while (k < d - 1 && ++idx[k] >= n) idx[k++] = lo;
    if (k >= d - 1) break;
  }
  return rows;
}

void check_window(const FrequencyWindow& W, double alpha, const LatticeOptions& opt) {
  W.validate();
  if (W.d > opt.max_lattice_dim)
    fail(Errc::InvalidArgument, "lattice windows are capped at the configured dimension; use Monte Carlo sampling");
  if (alpha > 0 && W.xi_min == 0.0)
    fail(Errc::ZeroFrequencyInWindow, "window must exclude the origin when alpha > 0");
}

double symbol(double r, double alpha) { return alpha == 0.0 ? 1.0 : riesz_symbol_radial(r, alpha); }

// Fills out[] for every row in [rb, re) using per-atom phasor recurrences along the row.
void eval_rows_atomic(const AtomicMeasure& mu, const FrequencyWindow& W, double alpha,
                      const std::vector<Row>& rows, std::size_t rb, std::size_t re, cplx* out,
                      double* pts) {
  const int d = W.d;
  const std::size_t n = mu.size();
  const double h = W.spacing;
  const double rmax2 = W.xi_max * W.xi_max, rmin2 = W.xi_min * W.xi_min;
  std::vector<double> zr(n), zi(n), sr(n), si(n), wr(n), wi(n);
  for (std::size_t j = 0; j < n; ++j) {
    wr[j] = mu.weight(j).real();
    wi[j] = mu.weight(j).imag();
    const cplx s = unit_phase(h * mu.location(j)[d - 1]);
    sr[j] = s.real();
    si[j] = s.imag();
  }
  constexpr int kResync = 32;
  for (std::size_t ri = rb; ri < re; ++ri) {
    const Row& row = rows[ri];
    Point xi = row.base;
    double s2 = 0;
    for (int k = 0; k < d - 1; ++k) s2 += xi[k] * xi[k];
    std::size_t slot = row.offset;
    int since = kResync;
    for (long k = row.k_lo; k <= row.k_hi; ++k) {
      xi[d - 1] = lattice_coord(h, k);
      const double r2 = s2 + xi[d - 1] * xi[d - 1];
      if (r2 < rmin2 || r2 > rmax2) {
        since = kResync;
        continue;
      }
      if (since >= kResync) {
        for (std::size_t j = 0; j < n; ++j) {
          const cplx z = unit_phase(dot(mu.location(j), xi));
          zr[j] = z.real();
          zi[j] = z.imag();
        }
        since = 0;
      }
      double ar[4] = {0, 0, 0, 0}, ai[4] = {0, 0, 0, 0};
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        for (int l = 0; l < 4; ++l) {
          ar[l] += wr[j + l] * zr[j + l] - wi[j + l] * zi[j + l];
          ai[l] += wr[j + l] * zi[j + l] + wi[j + l] * zr[j + l];
        }
      }
      for (; j < n; ++j) {
        ar[0] += wr[j] * zr[j] - wi[j] * zi[j];
        ai[0] += wr[j] * zi[j] + wi[j] * zr[j];
      }
      const cplx acc((ar[0] + ar[1]) + (ar[2] + ar[3]), (ai[0] + ai[1]) + (ai[2] + ai[3]));
      out[slot - rows[rb].offset] = symbol(std::sqrt(r2), alpha) * acc;
      if (pts)
        for (int c = 0; c < d; ++c) pts[(slot - rows[rb].offset) * d + c] = xi[c];
      ++slot;
      for (std::size_t q = 0; q < n; ++q) {
        const double a = zr[q] * sr[q] - zi[q] * si[q];
        zi[q] = zr[q] * si[q] + zi[q] * sr[q];
        zr[q] = a;
      }
      ++since;
    }
  }
}

template <class RowEval>
SampledField lattice_field(const FrequencyWindow& W, const Executor& ex, const LatticeOptions& opt,
                           RowEval&& eval) {
  const auto rows = lattice_rows(W, opt.orthant);
  const std::size_t total = rows.empty() ? 0 : rows.back().offset + rows.back().count;
  std::vector<cplx> values(total);
  std::vector<double> pts(opt.keep_points ? total * W.d : 0);
  ex.for_chunks(rows.size(), 8, [&](std::size_t, std::size_t b, std::size_t e) {
    const std::size_t off = rows[b].offset;
    eval(rows, b, e, values.data() + off, opt.keep_points ? pts.data() + off * W.d : nullptr);
  });
  const double vol = W.cell_volume() * (opt.orthant ? std::pow(2.0, W.d) : 1.0);
  SampledField F(W.d, vol, opt.keep_points);
  F.reserve(total);
  Point dummy(W.d);
  for (std::size_t i = 0; i < total; ++i) {
    std::span<const double> p = opt.keep_points
                                    ? std::span<const double>(pts.data() + i * W.d, W.d)
                                    : dummy.coords();
    F.push(p, values[i]);
  }
  return F;
}

}  // namespace

cplx fourier_transform_atomic(const AtomicMeasure& mu, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != mu.dim()) fail(Errc::DimensionMismatch, "frequency dimension");
  cplx s = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) s += mu.weight(j) * unit_phase(dot(mu.location(j), xi));
  return s;
}

std::vector<cplx> fourier_transform_batch(const AtomicMeasure& mu, std::span<const double> points,
                                          const Executor& ex) {
  const int d = mu.dim();
  const std::size_t n = points.size() / d;
  std::vector<cplx> out(n);
  ex.for_chunks(n, 256, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = fourier_transform_atomic(mu, points.subspan(i * d, d));
  });
  return out;
}

SampledField riesz_field(const AtomicMeasure& mu, double alpha, const FrequencyWindow& W,
                         const Executor& ex, const LatticeOptions& opt) {
  check_window(W, alpha, opt);
  if (mu.dim() != W.d) fail(Errc::DimensionMismatch, "measure and window dimensions differ");
  return lattice_field(W, ex, opt, [&](const std::vector<Row>& rows, std::size_t b, std::size_t e,
                                       cplx* out, double* pts) {
    eval_rows_atomic(mu, W, alpha, rows, b, e, out, pts);
  });
}

SampledField riesz_field(const Transform& ft, double alpha, const FrequencyWindow& W,
                         const Executor& ex, const LatticeOptions& opt) {
  check_window(W, alpha, opt);
  const int d = W.d;
  const double h = W.spacing;
  const double rmax2 = W.xi_max * W.xi_max, rmin2 = W.xi_min * W.xi_min;
  return lattice_field(W, ex, opt, [&](const std::vector<Row>& rows, std::size_t b, std::size_t e,
                                       cplx* out, double* pts) {
    std::size_t i = 0;
    for (std::size_t ri = b; ri < e; ++ri) {
      Point xi = rows[ri].base;
      double s2 = 0;
      for (int k = 0; k < d - 1; ++k) s2 += xi[k] * xi[k];
      for (long k = rows[ri].k_lo; k <= rows[ri].k_hi; ++k) {
        xi[d - 1] = lattice_coord(h, k);
        const double r2 = s2 + xi[d - 1] * xi[d - 1];
        if (r2 < rmin2 || r2 > rmax2) continue;
        out[i] = symbol(std::sqrt(r2), alpha) * ft(xi);
        if (pts)
          for (int c = 0; c < d; ++c) pts[i * d + c] = xi[c];
        ++i;
      }
    }
  });
}

SampledField radial_riesz_field(const RadialProfile& profile, double alpha, int d, double r_min,
                                double r_max, double dr) {
  if (!(r_max > r_min) || !(r_min >= 0) || !(dr > 0)) fail(Errc::InvalidArgument, "radial window");
  const double omega = ball_volume(d);
  const long n = static_cast<long>(std::ceil((r_max - r_min) / dr - 1e-9));
  SampledField F(d, omega * (std::pow(r_min + dr, d) - std::pow(r_min, d)));
  F.reserve(n);
  Point xi(d);
  for (long i = 0; i < n; ++i) {
    const double a = r_min + i * dr, b = std::min(r_max, a + dr), r = 0.5 * (a + b);
    xi[0] = r;
    F.push(xi, symbol(r, alpha) * profile(r), omega * (std::pow(b, d) - std::pow(a, d)));
  }
  return F;
}

std::vector<double> annulus_samples(int d, Annulus A, std::size_t n, std::uint64_t seed) {
  if (!(A.r_out > A.r_in) || !(A.r_in >= 0)) fail(Errc::InvalidArgument, "annulus radii");
  std::mt19937_64 eng(seed);
  auto u01 = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
  std::vector<double> pts(n * d);
  const double a = std::pow(A.r_in, d), b = std::pow(A.r_out, d);
  double spare = 0;
  bool has_spare = false;
  auto gauss = [&] {
    if (has_spare) return has_spare = false, spare;
    const double u1 = 1.0 - u01(), u2 = u01();
    const double m = std::sqrt(-2 * std::log(u1));
    spare = m * std::sin(two_pi * u2);
    has_spare = true;
    return m * std::cos(two_pi * u2);
  };
  for (std::size_t i = 0; i < n; ++i) {
    double* p = pts.data() + i * d;
    if (d == 1) {
      p[0] = (eng() >> 63) ? -1.0 : 1.0;
    } else {
      double s = 0;
      do {
        s = 0;
        for (int k = 0; k < d; ++k) p[k] = gauss(), s += p[k] * p[k];
      } while (s == 0);
      s = std::sqrt(s);
      for (int k = 0; k < d; ++k) p[k] /= s;
    }
    const double r = std::pow(a + u01() * (b - a), 1.0 / d);
    for (int k = 0; k < d; ++k) p[k] *= r;
  }
  return pts;
}

namespace {

SampledField mc_field(int d, double alpha, Annulus A, std::size_t n, std::uint64_t seed,
                      const Executor& ex, bool keep_points,
                      const std::function<void(std::span<const double>, cplx*, std::size_t, std::size_t)>& eval) {
  if (n == 0) fail(Errc::InvalidArgument, "Monte Carlo field needs at least one sample");
  if (alpha > 0 && A.r_in == 0.0) fail(Errc::ZeroFrequencyInWindow, "annulus must exclude the origin");
  const auto pts = annulus_samples(d, A, n, seed);
  std::vector<cplx> vals(n);
  ex.for_chunks(n, 256, [&](std::size_t, std::size_t b, std::size_t e) { eval(pts, vals.data(), b, e); });
  const double vol = ball_volume(d) * (std::pow(A.r_out, d) - std::pow(A.r_in, d));
  SampledField F(d, vol / static_cast<double>(n), keep_points);
  F.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> p(pts.data() + i * d, d);
    F.push(p, symbol(norm(p), alpha) * vals[i]);
  }
  return F;
}

}  // namespace

SampledField riesz_field_montecarlo(const AtomicMeasure& mu, double alpha, Annulus A, std::size_t n,
                                    std::uint64_t seed, const Executor& ex, bool keep_points) {
  const int d = mu.dim();
  return mc_field(d, alpha, A, n, seed, ex, keep_points,
                  [&](std::span<const double> pts, cplx* out, std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i)
                      out[i] = fourier_transform_atomic(mu, pts.subspan(i * d, d));
                  });
}

SampledField riesz_field_montecarlo(const Transform& ft, int d, double alpha, Annulus A, std::size_t n,
                                    std::uint64_t seed, const Executor& ex, bool keep_points) {
  return mc_field(d, alpha, A, n, seed, ex, keep_points,
                  [&](std::span<const double> pts, cplx* out, std::size_t b, std::size_t e) {
                    for (std::size_t i = b; i < e; ++i) out[i] = ft(pts.subspan(i * d, d));
                  });
}

}  // namespace fdecay
