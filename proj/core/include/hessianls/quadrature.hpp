#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hessianls/grid.hpp"
#include "hessianls/params.hpp"

namespace hessianls {

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b] to the given
/// relative tolerance.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-12);

/// F(r) = int_0^r f(s) ds tabulated at the grid nodes, with exact
/// (quadrature) evaluation at any r in [0, r_max].
class CumulativeIntegral {
 public:
  CumulativeIntegral(RealFn integrand, RadialGrid grid, double rel_tol = 1e-12);

  double operator()(double r) const;
  std::span<const double> node_values() const { return cumulative_; }
  const RadialGrid& grid() const { return grid_; }

 private:
  RealFn integrand_;
  RadialGrid grid_;
  std::vector<double> cumulative_;
  double rel_tol_;
};

/// The nested radial integrals that drive every comparison argument, for a
/// nonnegative weight g:
///
///   inner(r)     = int_0^r s^{n-1} g(s) ds
///   flux(r)      = (n r^{k-n} inner(r) / C_n^k)^{1/k}
///   potential(r) = int_0^r flux(s) ds
///
/// flux is u' for S_k(D^2 u) = g, and potential is the radial solution of that
/// problem vanishing at 0. Copies share the tabulation.
class KellerOssermanTransform {
 public:
  KellerOssermanTransform(OperatorShape shape, RealFn weight, const RadialGrid& grid,
                          double rel_tol = 1e-12);

  double inner(double r) const;
  double flux(double r) const;
  double potential(double r) const;

  std::span<const double> potential_at_nodes() const;
  const RadialGrid& grid() const;
  OperatorShape shape() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace hessianls
