#pragma once

#include <cstdint>

namespace hessianls {

/// Dimension and Hessian order of S_k on R^n.
struct OperatorShape {
  int n = 3;
  int k = 1;

  /// Throws InvalidArgument unless n >= 3 and 1 <= k <= n.
  void validate() const;
};

/// Parameters of S_k(D^2 u) = b u^gamma with the Cauchy datum u(0) = a.
struct ProblemParams {
  int n = 3;
  int k = 1;
  double gamma = 0.5;
  double a = 1.0;

  OperatorShape shape() const { return {n, k}; }

  /// Throws InvalidArgument naming the first violated field among
  /// n >= 3, 1 <= k <= n, 0 < gamma < k, a > 0.
  void validate() const;

  /// Exponent k / (k - gamma), ubiquitous in the comparison bounds.
  double sublinear_exponent() const { return k / (k - gamma); }
};

/// Exact binomial coefficient C_n^k. Throws InvalidArgument for negative
/// inputs, k > n, or n > 64.
std::uint64_t binomial(int n, int k);

/// C_n^k as a double; the form most formulas consume.
double binomial_real(int n, int k);

}  // namespace hessianls
