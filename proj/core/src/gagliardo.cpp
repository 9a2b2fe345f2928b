#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/norms.hpp"
#include "fdecay/quadrature.hpp"

namespace fdecay {

namespace {

constexpr double pi = std::numbers::pi;

struct Node {
  double x, w;
};

// Gauss rule on [a, b] with n nodes per panel
void gauss(double a, double b, int n, int panels, std::vector<Node>& out) {
  const GaussRule& g = gauss_legendre(n);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < n; ++i) out.push_back({c + 0.5 * h * g.x[i], 0.5 * h * g.w[i]});
  }
}

// Nodes on [a, b] graded toward both ends, where the integrand behaves like dist^{-s}:
// x = a + (mid - a) v^m with m = 1/(1-s) makes dist^{-s} dx smooth in v.
std::vector<Node> graded(double a, double b, double s, int n) {
  const double m = 1.0 / (1.0 - s);
  const double mid = 0.5 * (a + b), half = mid - a;
  std::vector<Node> v, out;
  gauss(0, 1, n, 2, v);
  for (const auto& q : v) {
    const double dx = half * m * std::pow(q.x, m - 1) * q.w;
    out.push_back({a + half * std::pow(q.x, m), dx});
    out.push_back({b - half * std::pow(q.x, m), dx});
  }
  return out;
}

double box_angular(const IndicatorSet& E, const Point& x, double s, int n) {
  const int d = E.dim();
  if (d == 1) return std::pow(x[0] - E.lo()[0], -s) + std::pow(E.hi()[0] - x[0], -s);
  if (d == 2) {
    // split at the corner directions, where the exit distance has kinks
    std::vector<double> cut;
    for (double cx : {E.lo()[0], E.hi()[0]})
      for (double cy : {E.lo()[1], E.hi()[1]}) {
        double a = std::atan2(cy - x[1], cx - x[0]);
        if (a < 0) a += 2 * pi;
        cut.push_back(a);
      }
    std::sort(cut.begin(), cut.end());
    cut.push_back(cut.front() + 2 * pi);
    double sum = 0;
    std::vector<Node> q;
    for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
      q.clear();
      gauss(cut[k], cut[k + 1], n, 2, q);
      for (const auto& node : q) {
        const double th[2] = {std::cos(node.x), std::sin(node.x)};
        sum += node.w * std::pow(E.exit_distance(x, th), -s);
      }
    }
    return sum;
  }
  // d = 3: cos(polar) x azimuth product rule
  std::vector<Node> u, ph;
  gauss(-1, 1, n, 4, u);
  gauss(0, 2 * pi, n, 8, ph);
  double sum = 0;
  for (const auto& a : u)
    for (const auto& b : ph) {
      const double st = std::sqrt(std::max(0.0, 1 - a.x * a.x));
      const double th[3] = {st * std::cos(b.x), st * std::sin(b.x), a.x};
      sum += a.w * b.w * std::pow(E.exit_distance(x, th), -s);
    }
  return sum;
}

double box_integral(const IndicatorSet& E, double s, int n) {
  const int d = E.dim();
  std::vector<std::vector<Node>> axes;
  for (int k = 0; k < d; ++k) axes.push_back(graded(E.lo()[k], E.hi()[k], s, n));
  double total = 0;
  std::vector<std::size_t> idx(d, 0);
  Point x(d);
  while (true) {
    double w = 1;
    for (int k = 0; k < d; ++k) x[k] = axes[k][idx[k]].x, w *= axes[k][idx[k]].w;
    total += w * box_angular(E, x, s, n);
    int k = 0;
    while (k < d && ++idx[k] >= axes[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
  return total;
}

double ball_integral(const IndicatorSet& E, double s, int n) {
  const int d = E.dim();
  const double R = E.radius();
  // radial nodes: plain on [0, R/2], graded toward the boundary on [R/2, R]
  std::vector<Node> rad;
  gauss(0, 0.5 * R, n, 1, rad);
  {
    const double m = 1.0 / (1.0 - s), half = 0.5 * R;
    std::vector<Node> v;
    gauss(0, 1, n, 2, v);
    for (const auto& q : v) rad.push_back({R - half * std::pow(q.x, m), half * m * std::pow(q.x, m - 1) * q.w});
  }
  auto rho = [&](double r, double c) {  // c = cos(angle to the radial direction)
    const double b = r * c;
    return -b + std::sqrt(b * b + R * R - r * r);
  };
  double total = 0;
  std::vector<Node> ang;
  if (d == 2) gauss(-pi, pi, n, 16, ang);
  else gauss(-1, 1, n, 16, ang);
  for (const auto& q : rad) {
    double A = 0;
    for (const auto& a : ang) {
      if (d == 2) A += a.w * std::pow(rho(q.x, std::cos(a.x)), -s);
      else A += 2 * pi * a.w * std::pow(rho(q.x, a.x), -s);
    }
    total += q.w * sphere_area(d) * std::pow(q.x, d - 1) * A;
  }
  return total;
}

}  // namespace

double gagliardo_seminorm(const IndicatorSet& E, double eta, double p, int resolution) {
  const double s = eta * p;
  if (!(eta > 0) || !(p >= 1) || !(s < 1)) fail(Errc::EtaPOutOfRange, "need eta > 0, p >= 1 and eta*p < 1");
  if (resolution < 2) fail(Errc::InvalidArgument, "resolution too small");
  double inner = 0;
  if (E.shape() == IndicatorSet::Shape::Box || E.dim() == 1) {
    if (E.dim() > 3) fail(Errc::UnsupportedShape, "boxes up to d = 3");
    IndicatorSet B = E.shape() == IndicatorSet::Shape::Box
                         ? E
                         : IndicatorSet::interval(E.center()[0] - E.radius(), E.center()[0] + E.radius());
    inner = box_integral(B, s, resolution);
  } else {
    if (E.dim() > 3) fail(Errc::UnsupportedShape, "balls up to d = 3");
    inner = ball_integral(E, s, resolution);
  }
  // 2 * int_E int_{E^c} |x-y|^{-d-s} dy dx, the inner radial integral done in closed form
  return 2.0 / s * inner;
}

}  // namespace fdecay
