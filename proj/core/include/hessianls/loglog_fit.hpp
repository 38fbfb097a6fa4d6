#pragma once

#include <cstddef>
#include <span>

namespace hessianls {

/// Least-squares power law value ~ c r^exponent over a radial window.
struct FitResult {
  double exponent = 0.0;
  double std_error = 0.0;  // standard error of the slope
  double log_amplitude = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::size_t count = 0;
};

/// The default asymptotic window: the last two decades below r_max.
struct FitWindow {
  double r_lo;
  double r_hi;

  static FitWindow last_decades(double r_max, double decades = 2.0);
};

/// Slope of log(value) against log(r) over nodes in [window.r_lo, window.r_hi].
/// Throws InvalidArgument when fewer than `min_nodes` nodes fall in the
/// window or a value in the window is not positive.
FitResult fit_loglog(std::span<const double> r, std::span<const double> values,
                     FitWindow window, std::size_t min_nodes);

}  // namespace hessianls
