#include "hessianls/spectrum.hpp"

#include <cmath>
#include <string>

#include "hessianls/errors.hpp"

namespace hessianls {

double sigma_j_radial(int j, double d2u, double du_over_r, int n) {
  if (j < 1 || j > n) {
    throw InvalidArgument("j", "sigma index must satisfy 1 <= j <= n, got " + std::to_string(j));
  }
  const double pure = (j <= n - 1) ? binomial_real(n - 1, j) * std::pow(du_over_r, j) : 0.0;
  const double mixed = binomial_real(n - 1, j - 1) * d2u * std::pow(du_over_r, j - 1);
  return pure + mixed;
}

std::vector<bool> gamma_k_membership(const RadialCurve& curve, int n, int k) {
  std::vector<bool> out(curve.size(), true);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r = curve.r(i);
    const double q = (r > 0.0) ? curve.du[i] / r : curve.d2u[i];
    for (int j = 1; j <= k; ++j) {
      if (!(sigma_j_radial(j, curve.d2u[i], q, n) > 0.0)) {
        out[i] = false;
        break;
      }
    }
  }
  return out;
}

std::vector<bool> gamma_k_membership(const RadialCurve& curve, const ProblemParams& params) {
  return gamma_k_membership(curve, params.n, params.k);
}

}  // namespace hessianls
