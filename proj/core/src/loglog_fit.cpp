#include "hessianls/loglog_fit.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hessianls/errors.hpp"

namespace hessianls {

FitWindow FitWindow::last_decades(double r_max, double decades) {
  return {r_max * std::pow(10.0, -decades), r_max};
}

FitResult fit_loglog(std::span<const double> r, std::span<const double> values,
                     FitWindow window, std::size_t min_nodes) {
  if (r.size() != values.size()) throw InvalidArgument("values", "length differs from radii");
  if (!(window.r_lo < window.r_hi)) throw InvalidArgument("window", "requires r_lo < r_hi");
  if (!(window.r_lo > 0.0)) throw InvalidArgument("window", "requires r_lo > 0 for a log fit");

  std::vector<double> xs, ys;
  const double slack = 1e-12 * window.r_hi;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < window.r_lo - slack || r[i] > window.r_hi + slack) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw InvalidArgument("values", "non-positive value " + std::to_string(values[i]) +
                                          " at r = " + std::to_string(r[i]));
    }
    xs.push_back(std::log(r[i]));
    ys.push_back(std::log(values[i]));
  }
  const std::size_t m = xs.size();
  if (m < min_nodes || m < 2) {
    throw InvalidArgument("window", "needs at least " + std::to_string(min_nodes) +
                                        " nodes, found " + std::to_string(m));
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult fit;
  fit.exponent = sxy / sxx;
  fit.log_amplitude = my - fit.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ys[i] - fit.log_amplitude - fit.exponent * xs[i];
    ssr += e * e;
  }
  fit.std_error = (m > 2) ? std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : 0.0;
  fit.r_lo = window.r_lo;
  fit.r_hi = window.r_hi;
  fit.count = m;
  return fit;
}

}  // namespace hessianls
