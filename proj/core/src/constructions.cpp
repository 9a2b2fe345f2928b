#include "fdecay/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/quadrature.hpp"

namespace fdecay {

namespace {
constexpr double pi = std::numbers::pi;
}

// ---- IndicatorSet

IndicatorSet IndicatorSet::box(const Point& lo, const Point& hi) {
  if (lo.dim() != hi.dim()) fail(Errc::DimensionMismatch, "box corners");
  for (int k = 0; k < lo.dim(); ++k)
    if (!(hi[k] > lo[k])) fail(Errc::InvalidArgument, "box needs lo < hi in every coordinate");
  IndicatorSet E;
  E.shape_ = Shape::Box;
  E.lo_ = lo, E.hi_ = hi, E.center_ = Point(lo.dim());
  for (int k = 0; k < lo.dim(); ++k) E.center_[k] = 0.5 * (lo[k] + hi[k]);
  return E;
}

IndicatorSet IndicatorSet::interval(double a, double b) { return box(Point{a}, Point{b}); }

IndicatorSet IndicatorSet::cube(int d, double side) {
  Point lo(d), hi(d);
  for (int k = 0; k < d; ++k) hi[k] = side;
  return box(lo, hi);
}

IndicatorSet IndicatorSet::ball(const Point& center, double radius) {
  if (!(radius > 0)) fail(Errc::InvalidArgument, "ball radius must be positive");
  IndicatorSet E;
  E.shape_ = Shape::Ball;
  E.center_ = center, E.radius_ = radius;
  E.lo_ = center, E.hi_ = center;
  for (int k = 0; k < center.dim(); ++k) E.lo_[k] -= radius, E.hi_[k] += radius;
  return E;
}

double IndicatorSet::volume() const {
  if (shape_ == Shape::Ball) return ball_volume(dim()) * std::pow(radius_, dim());
  double v = 1;
  for (int k = 0; k < dim(); ++k) v *= hi_[k] - lo_[k];
  return v;
}

double IndicatorSet::perimeter() const {
  const int d = dim();
  if (shape_ == Shape::Ball) return sphere_area(d) * std::pow(radius_, d - 1);
  double p = 0;
  for (int k = 0; k < d; ++k) {
    double face = 1;
    for (int j = 0; j < d; ++j)
      if (j != k) face *= hi_[j] - lo_[j];
    p += 2 * face;
  }
  return p;
}

double IndicatorSet::diameter() const {
  if (shape_ == Shape::Ball) return 2 * radius_;
  double s = 0;
  for (int k = 0; k < dim(); ++k) s += (hi_[k] - lo_[k]) * (hi_[k] - lo_[k]);
  return std::sqrt(s);
}

bool IndicatorSet::contains(std::span<const double> x) const {
  if (shape_ == Shape::Ball) {
    double s = 0;
    for (int k = 0; k < dim(); ++k) s += (x[k] - center_[k]) * (x[k] - center_[k]);
    return s < radius_ * radius_;
  }
  for (int k = 0; k < dim(); ++k)
    if (x[k] <= lo_[k] || x[k] >= hi_[k]) return false;
  return true;
}

double IndicatorSet::exit_distance(std::span<const double> x, std::span<const double> theta) const {
  const int d = dim();
  if (shape_ == Shape::Ball) {
    double b = 0, r2 = 0;
    for (int k = 0; k < d; ++k) {
      const double y = x[k] - center_[k];
      b += y * theta[k];
      r2 += y * y;
    }
    return -b + std::sqrt(std::max(0.0, b * b + radius_ * radius_ - r2));
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < d; ++k) {
    if (theta[k] > 0) best = std::min(best, (hi_[k] - x[k]) / theta[k]);
    else if (theta[k] < 0) best = std::min(best, (lo_[k] - x[k]) / theta[k]);
  }
  return best;
}

IndicatorSet IndicatorSet::dilated(double L) const {
  IndicatorSet E = *this;
  for (int k = 0; k < dim(); ++k) E.lo_[k] *= L, E.hi_[k] *= L, E.center_[k] *= L;
  E.radius_ *= L;
  return E;
}

// ---- spheres

namespace {

// n points on the upper unit half sphere (Fibonacci spiral) plus their antipodes
std::vector<std::array<double, 3>> symmetric_fibonacci(std::size_t n) {
  const std::size_t m = std::max<std::size_t>(1, (n + 1) / 2);
  const double golden = pi * (3 - std::sqrt(5.0));
  std::vector<std::array<double, 3>> pts;
  pts.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double z = 1 - (i + 0.5) / m;
    const double r = std::sqrt(std::max(0.0, 1 - z * z));
    const double ph = golden * static_cast<double>(i);
    pts.push_back({r * std::cos(ph), r * std::sin(ph), z});
  }
  for (std::size_t i = 0; i < m; ++i) pts.push_back({-pts[i][0], -pts[i][1], -pts[i][2]});
  return pts;
}

}  // namespace

AtomicMeasure sphere_measure(int k, int d, std::size_t n) {
  if (k < 1 || k > d - 1) fail(Errc::DimensionMismatch, "sphere dimension k must lie in [1, d-1]");
  if (n < 64) fail(Errc::InvalidArgument, "sphere quadrature needs at least 64 atoms");
  AtomicMeasure mu(d);
  Point x(d);
  if (k == 1) {
    mu.reserve(n);
    const double w = 2 * pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2 * pi * static_cast<double>(i) / static_cast<double>(n);
      x[0] = std::cos(a), x[1] = std::sin(a);
      mu.add(x, w);
    }
  } else if (k == 2) {
    const auto pts = symmetric_fibonacci(n);
    const double w = 4 * pi / static_cast<double>(pts.size());
    mu.reserve(pts.size());
    for (const auto& p : pts) {
      x[0] = p[0], x[1] = p[1], x[2] = p[2];
      mu.add(x, w);
    }
  } else if (k == 3) {
    // (sqrt(1-u) e^{ia}, sqrt(u) e^{ib}); the surface element is du da db / 2
    const int na = std::max(8, static_cast<int>(std::lround(std::cbrt(2.0 * static_cast<double>(n)))));
    const int nu = std::max(4, static_cast<int>(static_cast<double>(n) / (na * na)));
    const GaussRule& g = gauss_legendre(nu);
    const double da = 2 * pi / na;
    for (int i = 0; i < nu; ++i) {
      const double u = 0.5 * (g.x[i] + 1), wu = 0.5 * g.w[i];
      const double cu = std::sqrt(1 - u), su = std::sqrt(u);
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
          x[0] = cu * std::cos(a * da), x[1] = cu * std::sin(a * da);
          x[2] = su * std::cos(b * da), x[3] = su * std::sin(b * da);
          mu.add(x, 0.5 * wu * da * da);
        }
    }
  } else {
    fail(Errc::UnsupportedShape, "spheres of dimension above 3");
  }
  return mu;
}

double sphere_ft_radial(int k, double r) {
  const BesselOrder nu = BesselOrder::for_sphere(k);
  if (r < 1e-12) return 2 * std::pow(pi, nu.nu() + 1) / std::tgamma(nu.nu() + 1);
  return 2 * pi * std::pow(r, -nu.nu()) * bessel_j(nu, 2 * pi * r);
}

double sphere_ft(int k, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) < k + 1) fail(Errc::DimensionMismatch, "frequency too short for the sphere");
  double s = 0;
  for (int i = 0; i <= k; ++i) s += xi[i] * xi[i];
  return sphere_ft_radial(k, std::sqrt(s));
}

// ---- Cantor and segment

AtomicMeasure cantor_measure(int level, double ratio) {
  if (level > 20) fail(Errc::LevelTooDeep, "Cantor level above 20");
  if (level < 0) fail(Errc::InvalidArgument, "negative Cantor level");
  if (!(ratio > 0 && ratio < 0.5)) fail(Errc::InvalidArgument, "Cantor ratio must lie in (0, 1/2)");
  std::vector<double> left{0.0};
  double len = 1.0;
  for (int l = 0; l < level; ++l) {
    std::vector<double> next;
    next.reserve(2 * left.size());
    const double child = ratio * len;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + len - child);
    }
    left.swap(next);
    len = child;
  }
  AtomicMeasure mu(1);
  mu.reserve(left.size());
  const double w = std::ldexp(1.0, -level);
  for (double a : left) mu.add(std::array<double, 1>{a + 0.5 * len}, w);
  return mu;
}

cplx cantor_ft(int level, double ratio, double xi) {
  double prod = 1, scale = pi * xi * (1 - ratio);
  for (int l = 0; l < level; ++l, scale *= ratio) prod *= std::cos(scale);
  double ph = 0.5 * xi;
  ph -= std::nearbyint(ph);
  return prod * cplx(std::cos(2 * pi * ph), -std::sin(2 * pi * ph));
}

AtomicMeasure uniform_segment(std::size_t n) {
  if (n == 0) fail(Errc::InvalidArgument, "segment needs atoms");
  AtomicMeasure mu(1);
  mu.reserve(n);
  const double h = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) mu.add(std::array<double, 1>{(i + 0.5) * h}, h);
  return mu;
}

// ---- indicators

VectorMeasure indicator_boundary_measure(const IndicatorSet& E, std::size_t n) {
  const int d = E.dim();
  VectorMeasure mu(d);
  std::array<cplx, kMaxDim> w{};
  Point x(d);
  if (d == 1) {
    x[0] = E.lo()[0], w[0] = 1.0;
    mu.add(x, std::span<const cplx>(w.data(), 1));
    x[0] = E.hi()[0], w[0] = -1.0;
    mu.add(x, std::span<const cplx>(w.data(), 1));
    return mu;
  }
  if (n == 0) fail(Errc::InvalidArgument, "boundary quadrature needs atoms");
  if (E.shape() == IndicatorSet::Shape::Box) {
    const double density = std::pow(static_cast<double>(n) / E.perimeter(), 1.0 / (d - 1));
    for (int k = 0; k < d; ++k) {
      std::array<long, kMaxDim> m{};
      double dA = 1;
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        const double len = E.hi()[j] - E.lo()[j];
        m[j] = std::max(1L, std::lround(len * density));
        dA *= len / m[j];
      }
      for (int side = 0; side < 2; ++side) {
        std::array<long, kMaxDim> idx{};
        while (true) {
          for (int j = 0; j < d; ++j) {
            if (j == k) continue;
            x[j] = E.lo()[j] + (E.hi()[j] - E.lo()[j]) * (idx[j] + 0.5) / m[j];
          }
          x[k] = side ? E.hi()[k] : E.lo()[k];
          for (int j = 0; j < d; ++j) w[j] = 0.0;
          w[k] = side ? -dA : dA;  // -outward normal
          mu.add(x, std::span<const cplx>(w.data(), d));
          int j = 0;
          for (; j < d; ++j) {
            if (j == k) continue;
            if (++idx[j] < m[j]) break;
            idx[j] = 0;
          }
          if (j == d) break;
        }
      }
    }
    return mu;
  }
  const double R = E.radius();
  if (d == 2) {
    const double dA = 2 * pi * R / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2 * pi * static_cast<double>(i) / static_cast<double>(n);
      const double nx = std::cos(a), ny = std::sin(a);
      x[0] = E.center()[0] + R * nx, x[1] = E.center()[1] + R * ny;
      w[0] = -nx * dA, w[1] = -ny * dA;
      mu.add(x, std::span<const cplx>(w.data(), 2));
    }
    return mu;
  }
  if (d == 3) {
    const auto pts = symmetric_fibonacci(n);
    const double dA = 4 * pi * R * R / static_cast<double>(pts.size());
    for (const auto& p : pts) {
      for (int k = 0; k < 3; ++k) x[k] = E.center()[k] + R * p[k], w[k] = -p[k] * dA;
      mu.add(x, std::span<const cplx>(w.data(), 3));
    }
    return mu;
  }
  fail(Errc::UnsupportedShape, "ball boundaries up to d = 3");
}

namespace {

double sinc_len(double xi, double len) {
  const double z = pi * xi * len;
  if (std::abs(z) < 1e-8) return len * (1 - z * z / 6);
  return std::sin(z) / (pi * xi);
}

}  // namespace

double indicator_ft_modulus(const IndicatorSet& E, std::span<const double> xi) {
  const int d = E.dim();
  if (static_cast<int>(xi.size()) != d) fail(Errc::DimensionMismatch, "frequency dimension");
  if (E.shape() == IndicatorSet::Shape::Box) {
    double v = 1;
    for (int k = 0; k < d; ++k) v *= sinc_len(xi[k], E.hi()[k] - E.lo()[k]);
    return std::abs(v);
  }
  return std::abs(ball_indicator_ft(norm(xi), E.radius(), d));
}

cplx indicator_ft(const IndicatorSet& E, std::span<const double> xi) {
  const int d = E.dim();
  if (static_cast<int>(xi.size()) != d) fail(Errc::DimensionMismatch, "frequency dimension");
  double ph = 0;
  for (int k = 0; k < d; ++k) ph += xi[k] * E.center()[k];
  ph -= std::nearbyint(ph);
  const cplx phase(std::cos(2 * pi * ph), -std::sin(2 * pi * ph));
  if (E.shape() == IndicatorSet::Shape::Box) {
    double v = 1;
    for (int k = 0; k < d; ++k) v *= sinc_len(xi[k], E.hi()[k] - E.lo()[k]);
    return v * phase;
  }
  return ball_indicator_ft(norm(xi), E.radius(), d) * phase;
}

AtomicMeasure indicator_atoms(const IndicatorSet& E, double pitch) {
  if (!(pitch > 0)) fail(Errc::InvalidArgument, "pitch must be positive");
  const int d = E.dim();
  std::array<long, kMaxDim> m{};
  std::array<double, kMaxDim> h{};
  for (int k = 0; k < d; ++k) {
    const double len = E.hi()[k] - E.lo()[k];
    m[k] = std::max(1L, static_cast<long>(std::ceil(len / pitch - 1e-9)));
    h[k] = E.shape() == IndicatorSet::Shape::Box ? len / m[k] : pitch;
    if (E.shape() == IndicatorSet::Shape::Ball) m[k] = static_cast<long>(std::ceil(len / pitch));
  }
  double cell = 1;
  for (int k = 0; k < d; ++k) cell *= h[k];
  AtomicMeasure mu(d);
  std::array<long, kMaxDim> idx{};
  Point x(d);
  while (true) {
    for (int k = 0; k < d; ++k) x[k] = E.lo()[k] + (idx[k] + 0.5) * h[k];
    if (E.contains(x)) mu.add(x, cell);
    int k = 0;
    while (k < d && ++idx[k] >= m[k]) idx[k++] = 0;
    if (k == d) break;
  }
  return mu;
}

}  // namespace fdecay
