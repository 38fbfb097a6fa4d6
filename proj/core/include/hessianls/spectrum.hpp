#pragma once

#include <vector>

#include "hessianls/curve.hpp"
#include "hessianls/params.hpp"

namespace hessianls {

/// sigma_j of the radial spectrum (d2u, q, ..., q) with q = du/r repeated
/// n-1 times: C_{n-1}^j q^j + C_{n-1}^{j-1} d2u q^{j-1}.
double sigma_j_radial(int j, double d2u, double du_over_r, int n);

/// Per node, whether sigma_j > 0 for all 1 <= j <= k. At r = 0 the limit
/// du/r -> d2u is used.
std::vector<bool> gamma_k_membership(const RadialCurve& curve, const ProblemParams& params);

/// Same check for an explicit order, so callers can probe monotonicity in k.
std::vector<bool> gamma_k_membership(const RadialCurve& curve, int n, int k);

}  // namespace hessianls
