#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdecay/errors.hpp"
#include "fdecay/kernels.hpp"

namespace fdecay {

namespace {

constexpr double kSwitch = 50.0;

double series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double h = 0.5 * x, h2 = h * h;
  double term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -h2 / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Backward recurrence normalized by J0 + 2 sum J_{2k} = 1.
double miller(int n, double x) {
  const int base = std::max(n, static_cast<int>(x));
  int m = base + 24 + static_cast<int>(std::sqrt(40.0 * base));
  m += m % 2;
  double fkp1 = 0.0, fk = 1e-30;
  double sum = 2.0 * fk, ans = (n == m) ? fk : 0.0;
  for (int k = m; k >= 1; --k) {
    const double fkm1 = (2.0 * k / x) * fk - fkp1;
    fkp1 = fk;
    fk = fkm1;
    const int idx = k - 1;
    if (idx == n) ans = fk;
    if (idx > 0 && idx % 2 == 0) sum += 2.0 * fk;
    if (std::abs(fk) > 1e250) {
      fk *= 1e-250, fkp1 *= 1e-250, ans *= 1e-250, sum *= 1e-250;
    }
  }
  sum += fk;
  return ans / sum;
}

// Upward recurrence from the closed forms of J_{1/2}, J_{3/2}; stable for x > nu.
double half_upward(int m, double x) {
  const double c = std::sqrt(2.0 / (std::numbers::pi * x));
  const double s = std::sin(x), co = std::cos(x);
  double jm = c * s;                  // J_{1/2}
  if (m == 1) return jm;
  double j = c * (s / x - co);        // J_{3/2}
  for (int tw = 3; tw < m; tw += 2) {  // tw = 2 nu of j
    const double next = (tw / x) * j - jm;
    jm = j;
    j = next;
  }
  return j;
}

// P and Q of the Hankel expansion; terminates for half-integer orders.
void hankel_pq(double nu, double x, double& P, double& Q) {
  const double mu = 4.0 * nu * nu;
  const bool finite = std::fmod(nu, 1.0) != 0.0;
  P = 1.0, Q = 0.0;
  double a = 1.0, prev = 1e300;
  for (int k = 1; k < 200; ++k) {
    const double f = mu - (2.0 * k - 1) * (2.0 * k - 1);
    a *= f / (k * 8.0 * x);
    const double mag = std::abs(a);
    if (mag == 0.0) break;
    if (!finite && mag > prev) break;  // asymptotic series starts to diverge
    const int r = k % 4;
    if (r == 0) P += a;
    else if (r == 1) Q += a;
    else if (r == 2) P -= a;
    else Q -= a;
    prev = mag;
    if (!finite && mag < 1e-17) break;
  }
}

// cos(x - phi) and sin(x - phi) without forming x - phi
void shifted_cos_sin(double x, double phi, double& c, double& s) {
  const double cx = std::cos(x), sx = std::sin(x);
  const double cp = std::cos(phi), sp = std::sin(phi);
  c = cx * cp + sx * sp;
  s = sx * cp - cx * sp;
}

double phase(BesselOrder nu) { return std::numbers::pi * (0.5 * nu.nu() + 0.25); }

}  // namespace

double bessel_j_near(BesselOrder nu, double x) {
  if (nu.twice_nu < 0) fail(Errc::InvalidArgument, "negative Bessel order");
  if (!(x >= 0)) fail(Errc::InvalidArgument, "Bessel argument must be nonnegative");
  if (x == 0.0) return nu.twice_nu == 0 ? 1.0 : 0.0;
  if (nu.half_integer()) {
    const int n = (nu.twice_nu - 1) / 2;
    if (x < n + 2.0) return series(nu.nu(), x);
    return half_upward(nu.twice_nu, x);
  }
  const int n = nu.twice_nu / 2;
  if (x <= 8.0 || x < 0.5 * n) return series(nu.nu(), x);
  return miller(n, x);
}

double bessel_j_far(BesselOrder nu, double x) {
  if (!(x > 0)) fail(Errc::InvalidArgument, "asymptotic Bessel branch needs x > 0");
  double P, Q, c, s;
  hankel_pq(nu.nu(), x, P, Q);
  shifted_cos_sin(x, phase(nu), c, s);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * c - Q * s);
}

double bessel_j(BesselOrder nu, double x) {
  return x > kSwitch ? bessel_j_far(nu, x) : bessel_j_near(nu, x);
}

double bessel_leading(BesselOrder nu, double x) {
  double c, s;
  shifted_cos_sin(x, phase(nu), c, s);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * c;
}

double bessel_remainder(BesselOrder nu, double x) {
  if (!(x >= 1.0)) fail(Errc::InvalidArgument, "remainder is defined for x >= 1");
  if (nu.half_integer() || x > kSwitch) {
    // tail of the Hankel expansion: exact (finite) for half-integer orders
    double P, Q, c, s;
    hankel_pq(nu.nu(), x, P, Q);
    shifted_cos_sin(x, phase(nu), c, s);
    return std::sqrt(2.0 / (std::numbers::pi * x)) * ((P - 1.0) * c - Q * s);
  }
  return bessel_j_near(nu, x) - bessel_leading(nu, x);
}

}  // namespace fdecay
