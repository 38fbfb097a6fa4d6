#pragma once

#include <string>

#include "hessianls/curve.hpp"
#include "hessianls/params.hpp"
#include "hessianls/profile.hpp"
#include "hessianls/errors.hpp"

namespace hessianls {

/// Integration state: radius, value and accumulated moment
/// M(r) = int_0^r s^{n-1} b(s) u(s)^gamma ds.
struct CauchyState {
  double r = 0.0;
  double u = 0.0;
  double moment = 0.0;
};

/// Step-size control failed; carries the last accepted state.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, CauchyState last) : Error(what), last_(last) {}
  const CauchyState& last_good() const noexcept { return last_; }

 private:
  CauchyState last_;
};

/// u crossed the overflow guard. Radial solutions with continuous positive b
/// cannot blow up at a finite radius, so this signals a numerical problem or
/// bad input rather than mathematics.
class FiniteBlowUp : public IntegrationFailure {
 public:
  using IntegrationFailure::IntegrationFailure;
};

struct SolverOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  /// Series start radius; <= 0 selects 1e-4 * r_lin with r_lin = min(10, r_max).
  double r_series = -1.0;
  double overflow_guard = 1e300;
  std::size_t max_steps = 5'000'000;
};

/// Solves C_{n-1}^{k-1} u'' (u'/r)^{k-1} + C_{n-1}^k (u'/r)^k = b u^gamma,
/// u(0) = a, u'(0) = 0 on the grid, as the first-order system
///
///   u' = (n r^{k-n} M / C_n^k)^{1/k},   M' = r^{n-1} b u^gamma
///
/// with an embedded Dormand-Prince 5(4) pair that lands on every grid node.
/// The start [0, r_series] uses the series u = a + c r^2 / 2,
/// c = (b(0) a^gamma / C_n^k)^{1/k}. u'' is recovered from the equation.
RadialCurve solve_cauchy(const ProblemParams& params, const RadialProfile& b,
                         const RadialGrid& grid, const SolverOptions& options = {});

/// The right-hand side f = b u^gamma along a curve.
std::vector<double> cauchy_rhs(const ProblemParams& params, const RadialProfile& b,
                               const RadialCurve& curve);

/// Radial solution of S_k(D^2 v) = b with v(0) = 0, by nested quadrature
/// v(r) = int_0^r (n s^{k-n} / C_n^k int_0^s t^{n-1} b dt)^{1/k} ds.
RadialCurve solve_linear_rhs(OperatorShape shape, const RadialProfile& b, const RadialGrid& grid);

}  // namespace hessianls
