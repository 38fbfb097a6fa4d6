#include "hessianls/params.hpp"

#include <cmath>
#include <string>

#include "hessianls/errors.hpp"

namespace hessianls {

void OperatorShape::validate() const {
  if (n < 3) {
    throw InvalidArgument("n", "dimension must be >= 3, got " + std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw InvalidArgument("k", "Hessian order must satisfy 1 <= k <= n, got " + std::to_string(k));
  }
}

void ProblemParams::validate() const {
  shape().validate();
  if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= static_cast<double>(k)) {
    throw InvalidArgument("gamma", "exponent must satisfy 0 < gamma < k (k = " +
                                       std::to_string(k) + "), got " + std::to_string(gamma));
  }
  if (!std::isfinite(a) || a <= 0.0) {
    throw InvalidArgument("a", "initial value must be positive, got " + std::to_string(a));
  }
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw InvalidArgument("", "binomial: negative argument");
  if (k > n) throw InvalidArgument("", "binomial: k > n");
  if (n > 64) throw InvalidArgument("", "binomial: n > 64 is not supported");
  if (k > n - k) k = n - k;
  // Each partial product C(n, i+1) is an integer; the 128-bit intermediate
  // absorbs the multiplication before the exact division.
  __extension__ typedef unsigned __int128 wide;
  wide acc = 1;
  for (int i = 0; i < k; ++i) {
    acc = acc * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  }
  return static_cast<std::uint64_t>(acc);
}

double binomial_real(int n, int k) { return static_cast<double>(binomial(n, k)); }

}  // namespace hessianls
