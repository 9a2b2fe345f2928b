#include "fdecay/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "fdecay/errors.hpp"

namespace fdecay {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * wgk[7], rg = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const double s = f(c - dx) + f(c + dx);
    rk += wgk[j] * s;
    if (j % 2 == 1) rg += wg[j / 2] * s;
  }
  return {a, b, rk * h, std::abs((rk - rg) * h)};
}

}  // namespace

QuadResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol, double rel_tol,
                              int max_intervals) {
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment s0 = gk15(f, a, b);
  double total = s0.value, err = s0.error;
  heap.push(s0);
  int n = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (n >= max_intervals) {
      std::ostringstream os;
      os << "adaptive quadrature on [" << a << ", " << b << "] stopped at error " << err;
      fail(Errc::QuadratureNotConverged, os.str());
    }
    Segment s = heap.top();
    heap.pop();
    const double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) {
      fail(Errc::QuadratureNotConverged, "interval collapsed below machine resolution");
    }
    Segment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  // re-sum to shed the running-update rounding
  double sum = 0, esum = 0;
  std::vector<Segment> all;
  all.reserve(heap.size());
  while (!heap.empty()) all.push_back(heap.top()), heap.pop();
  std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : all) sum += s.value, esum += s.error;
  return {sum, esum, n};
}

double integrate(const RealFn& f, double a, double b, double abs_tol, double rel_tol) {
  return integrate_adaptive(f, a, b, abs_tol, rel_tol).value;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1, p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1, p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    rule->x[i] = -x;
    rule->x[n - 1 - i] = x;
    rule->w[i] = rule->w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->x[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

double integrate_composite(const RealFn& f, double a, double b, int panels, int n) {
  const GaussRule& g = gauss_legendre(n);
  const double h = (b - a) / panels;
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double ps = 0;
    for (int i = 0; i < n; ++i) ps += g.w[i] * f(c + 0.5 * h * g.x[i]);
    s += 0.5 * h * ps;
  }
  return s;
}

}  // namespace fdecay
