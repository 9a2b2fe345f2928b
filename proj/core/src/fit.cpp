#include "fdecay/fit.hpp"

#include <cmath>
#include <vector>

#include "fdecay/errors.hpp"

namespace fdecay {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(Errc::DimensionMismatch, "fit needs matching x and y");
  const std::size_t n = x.size();
  if (n < 2) fail(Errc::InvalidArgument, "fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) fail(Errc::InvalidArgument, "fit needs distinct abscissae");
  LinearFit f;
  f.n = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - f.slope * x[i] - f.intercept;
    sse += e * e;
  }
  f.rms = std::sqrt(sse / n);
  f.residual = syy > 0 ? std::sqrt(std::max(0.0, sse / syy)) : 0.0;
  f.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return f;
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(Errc::DimensionMismatch, "fit needs matching x and y");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) fail(Errc::InvalidArgument, "log-log fit needs positive data");
    lx[i] = std::log(x[i]), ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

}  // namespace fdecay
