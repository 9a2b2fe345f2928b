#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fdecay/constructions.hpp"
#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/quadrature.hpp"

namespace fdecay {

namespace {

constexpr double pi = std::numbers::pi;

double psi(double x) { return x > 0 ? std::exp(-1 / x) : 0.0; }

constexpr int kPanels = 64;
constexpr int kNodes = 12;

// transition band [2,4]: nodes rho and weights hat(rho) * rho^{d-1} * dw
struct Band {
  std::vector<double> rho, w;
};

Band transition_band(int d) {
  Band b;
  const GaussRule& g = gauss_legendre(kNodes);
  const double h = 2.0 / kPanels;
  for (int p = 0; p < kPanels; ++p)
    for (int i = 0; i < kNodes; ++i) {
      const double rho = 2 + h * (p + 0.5 * (g.x[i] + 1));
      b.rho.push_back(rho);
      b.w.push_back(0.5 * h * g.w[i] * BumpProfile::hat(rho) * std::pow(rho, d - 1));
    }
  return b;
}

// radial inverse transform of the band part
double band_value(const Band& b, double r, int d) {
  double s = 0;
  const std::size_t n = b.rho.size();
  if (r == 0) {
    for (std::size_t i = 0; i < n; ++i) s += b.w[i];
    return sphere_area(d) * s;
  }
  const double z = 2 * pi * r;
  switch (d) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) s += b.w[i] * std::cos(z * b.rho[i]);
      return 2 * s;
    case 2:
      for (std::size_t i = 0; i < n; ++i) s += b.w[i] * bessel_j(BesselOrder::integer(0), z * b.rho[i]);
      return 2 * pi * s;
    case 3:
      for (std::size_t i = 0; i < n; ++i) s += b.w[i] * std::sin(z * b.rho[i]) / b.rho[i];
      return 2 * s / r;
    default:
      fail(Errc::DimensionMismatch, "bump profile up to d = 3");
  }
}

}  // namespace

double BumpProfile::hat(double r) {
  r = std::abs(r);
  if (r <= 2) return 1;
  if (r >= 4) return 0;
  const double a = psi(4 - r), b = psi(r - 2);
  return a / (a + b);
}

double BumpProfile::phi_direct(double r, int d) const {
  static thread_local std::array<std::unique_ptr<Band>, 4> bands;
  if (d < 1 || d > 3) fail(Errc::DimensionMismatch, "bump profile up to d = 3");
  if (!bands[d]) bands[d] = std::make_unique<Band>(transition_band(d));
  return ball_indicator_ft(r, 2.0, d) + band_value(*bands[d], r, d);
}

const BumpProfile::Table& BumpProfile::table(int d) const {
  if (d < 1 || d > 3) fail(Errc::DimensionMismatch, "bump profile up to d = 3");
  std::lock_guard lock(mu_);
  if (tables_[d]) return *tables_[d];
  auto T = std::make_unique<Table>();
  const int n = static_cast<int>(table_end / table_step) + 1;
  T->v.resize(n);
  const Band b = transition_band(d);
  for (int i = 0; i < n; ++i) {
    const double r = i * table_step;
    T->v[i] = ball_indicator_ft(r, 2.0, d) + band_value(b, r, d);
  }
  const double tol = tail_tolerance * std::abs(T->v[0]);
  int last = n - 1;
  while (last > 0 && std::abs(T->v[last]) < tol) --last;
  if (last >= n - 2 * static_cast<int>(1 / table_step))
    fail(Errc::ProfileNotConverged, "bump profile tail does not fall below tolerance inside the table");
  T->cutoff = (last + 1) * table_step;
  tables_[d] = std::move(T);
  return *tables_[d];
}

double BumpProfile::phi(double r, int d) const {
  const Table& T = table(d);
  r = std::abs(r);
  if (r >= table_end) return 0;
  const int n = static_cast<int>(T.v.size());
  const double u = r / table_step;
  int i0 = static_cast<int>(std::floor(u)) - 2;
  i0 = std::clamp(i0, 0, n - 6);
  double s = 0;
  for (int i = 0; i < 6; ++i) {
    double l = 1;
    for (int j = 0; j < 6; ++j)
      if (j != i) l *= (u - (i0 + j)) / static_cast<double>(i - j);
    s += l * T.v[i0 + i];
  }
  return s;
}

double BumpProfile::truncation_radius(int d) const { return table(d).cutoff; }

AtomicMeasure bump_phi(const BumpProfile& B, int d) {
  if (d < 1 || d > 2) fail(Errc::DimensionMismatch, "bump atomization up to d = 2");
  const double R = B.truncation_radius(d);
  const double h = BumpProfile::pitch;
  const long m = static_cast<long>(std::ceil(R / h));
  const double cell = std::pow(h, d);
  AtomicMeasure mu(d);
  if (d == 1) {
    mu.reserve(2 * m + 1);
    for (long i = -m; i <= m; ++i) {
      const double x = i * h;
      if (std::abs(x) < R) mu.add(std::array<double, 1>{x}, cell * B.phi(x, 1));
    }
    return mu;
  }
  for (long i = -m; i <= m; ++i)
    for (long j = -m; j <= m; ++j) {
      const double x = i * h, y = j * h, r = std::hypot(x, y);
      if (r < R) mu.add(std::array<double, 2>{x, y}, cell * B.phi(r, 2));
    }
  return mu;
}

AtomicMeasure bump_family(const BumpProfile& B, int d, double N, const Point& j, double beta) {
  if (!(N >= 1)) fail(Errc::InvalidArgument, "bump scale N must be at least 1");
  if (j.dim() != d) fail(Errc::DimensionMismatch, "translate dimension");
  return bump_phi(B, d).dilated(1 / N).translated(j).scaled(std::pow(N, -beta));
}

long bump_count(double N, double beta) {
  return static_cast<long>(std::floor(std::pow(N, beta) + 1e-9));
}

AtomicMeasure RademacherLayout::sign_measure() const {
  AtomicMeasure mu(d);
  mu.reserve(terms());
  for (std::size_t i = 0; i < terms(); ++i) mu.add(translates[i], static_cast<double>(signs[i]));
  return mu;
}

cplx RademacherLayout::analytic_ft(std::span<const double> xi) const {
  const double h = BumpProfile::hat(norm(xi) / N);
  if (h == 0) return 0;
  auto unit = [](double ph) {
    ph -= std::nearbyint(ph);
    return cplx(std::cos(2 * pi * ph), -std::sin(2 * pi * ph));
  };
  // Horner in u = e^{-2 pi i gap xi_0} along rows, then in v across rows
  const cplx u = unit(gap * xi[0]);
  const long M = static_cast<long>(terms());
  cplx s = 0;
  if (d == 1) {
    for (long i = M - 1; i >= 0; --i) s = s * u + static_cast<double>(signs[i]);
  } else {
    const cplx v = unit(gap * xi[1]);
    const long rows = (M + side - 1) / side;
    for (long b = rows - 1; b >= 0; --b) {
      cplx row = 0;
      for (long a = std::min(side, M - b * side) - 1; a >= 0; --a) row = row * u + static_cast<double>(signs[b * side + a]);
      s = s * v + row;
    }
  }
  return std::pow(N, -beta) * h * s;
}

AtomicMeasure RademacherLayout::to_measure(const BumpProfile& B) const {
  const AtomicMeasure base = bump_phi(B, d).dilated(1 / N).scaled(std::pow(N, -beta));
  AtomicMeasure mu(d);
  mu.reserve(base.size() * terms());
  for (std::size_t i = 0; i < terms(); ++i)
    mu.append(base.translated(translates[i]).scaled(static_cast<double>(signs[i])));
  return mu;
}

RademacherLayout rademacher_layout(const BumpProfile& B, int d, double N, double beta, double spacing,
                                   std::uint64_t seed) {
  if (d < 1 || d > 2) fail(Errc::DimensionMismatch, "Rademacher sums up to d = 2");
  if (!(N >= 1)) fail(Errc::InvalidArgument, "bump scale N must be at least 1");
  const long M = bump_count(N, beta);
  if (M < 1) fail(Errc::InvalidArgument, "floor(N^beta) must be at least 1");
  if (!(spacing > 0)) fail(Errc::InvalidArgument, "translate spacing must be positive");
  RademacherLayout L;
  L.d = d, L.N = N, L.beta = beta;
  L.gap = std::max(1L, static_cast<long>(std::ceil(spacing * 2 * B.truncation_radius(d) / N)));
  const long side = d == 1 ? M : static_cast<long>(std::ceil(std::sqrt(static_cast<double>(M))));
  L.side = side;
  std::mt19937_64 rng(seed);
  for (long i = 0; i < M; ++i) {
    Point j(d);
    if (d == 1) j[0] = static_cast<double>(L.gap * i);
    else j[0] = static_cast<double>(L.gap * (i % side)), j[1] = static_cast<double>(L.gap * (i / side));
    L.translates.push_back(j);
    L.signs.push_back((rng() >> 63) ? 1 : -1);
  }
  return L;
}

AtomicMeasure rademacher_sum(const BumpProfile& B, int d, double N, double beta, double spacing,
                             std::uint64_t seed) {
  return rademacher_layout(B, d, N, beta, spacing, seed).to_measure(B);
}

}  // namespace fdecay
