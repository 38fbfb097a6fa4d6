#pragma once

#include <vector>

#include "hessianls/errors.hpp"
#include "hessianls/params.hpp"
#include "hessianls/profile.hpp"

namespace hessianls {

/// The break line left the box a <= psi < 2a before reaching R.
class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

/// Euler break line: psi = a on [0, r_1], then piecewise linear with slope
/// F[r_{i-1}, psi] on each later segment, where
/// F[r, psi] = (n r^{k-n} / C_n^k int_0^r s^{n-1} b psi^gamma ds)^{1/k}.
struct Polyline {
  std::vector<double> r;    // breakpoints r_0 = 0 < r_1 < ... < r_m = R
  std::vector<double> psi;  // psi(r_i)
  double epsilon = 0.0;
  /// Largest sampled |psi' - F[r, psi]| over all segments.
  double max_defect = 0.0;
  /// Sampled defect per segment (segment i spans [r_i, r_{i+1}]).
  std::vector<double> segment_defect;

  double operator()(double x) const;
};

/// Builds an epsilon-approximate break line on [0, R]. The first breakpoint is
/// r_1 = (C_n^k)^{1/k} eps / (max_{[0,R]} b^{1/k} (2a)^{gamma/k}) and the rest
/// of [r_1, R] is split uniformly, doubling the segment count until every
/// sampled defect is below eps. Throws RadiusTooLarge when psi reaches 2a.
Polyline euler_polyline(const ProblemParams& params, const RadialProfile& b, double R,
                        double epsilon);

}  // namespace hessianls
