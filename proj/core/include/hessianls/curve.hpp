#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hessianls/grid.hpp"
#include "hessianls/params.hpp"

namespace hessianls {

/// Discretized radial solution: values, first and second derivatives on a
/// grid. `moment` holds M(r) = int_0^r s^{n-1} b u^gamma ds when the curve
/// comes from the Cauchy solver and is empty otherwise.
struct RadialCurve {
  RadialGrid grid;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> d2u;
  std::vector<double> moment;

  std::size_t size() const { return u.size(); }
  double r(std::size_t i) const { return grid[i]; }
};

/// Per-node relative residual |S_k(u) - f| / max(|f|, |pure| + |mixed|), where
/// S_k = C_{n-1}^k q^k + C_{n-1}^{k-1} u'' q^{k-1} with q = u'/r (u'' at r = 0).
/// When u'' < 0 the two terms can cancel far below rounding of either, and
/// the term scale is then the meaningful reference.
std::vector<double> sigma_k_residual(const RadialCurve& curve, int n, int k,
                                     const std::vector<double>& rhs);

/// Writes `r,u,du,d2u,sigma_k_residual` rows with 17 significant digits.
void write_curve_csv(std::ostream& out, const RadialCurve& curve,
                     const std::vector<double>& residual);
void write_curve_csv(const std::string& path, const RadialCurve& curve,
                     const std::vector<double>& residual);

/// Reads a curve written by write_curve_csv (residual column ignored).
RadialCurve read_curve_csv(std::istream& in);

}  // namespace hessianls
