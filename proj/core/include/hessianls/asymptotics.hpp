#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "hessianls/curve.hpp"
#include "hessianls/loglog_fit.hpp"
#include "hessianls/params.hpp"

namespace hessianls {

/// u = C r^alpha solves the radial problem with b = r^{-l} for r > r0.
struct PowerSolution {
  double alpha = 0.0;
  double C = 0.0;
  double r0 = 0.0;

  double operator()(double r) const;
  double derivative(double r) const;
  double second_derivative(double r) const;
};

/// alpha = (2k - l)/(k - gamma), C = (n / (C_n^k (n + (alpha - 2)k) alpha^k))^{1/(k-gamma)}.
/// Requires l <= k - 1.
PowerSolution exact_power_solution(const ProblemParams& params, double l, double r0 = 0.0);

/// Relative residual |sigma_k(C r^alpha) - r^{-l} (C r^alpha)^gamma| / rhs at r.
double power_solution_residual(const ProblemParams& params, double l, const PowerSolution& s,
                               double r);

/// Log-log slope with at least 20 nodes in the window.
FitResult fit_exponent(std::span<const double> r, std::span<const double> values,
                       FitWindow window);

struct RateReport {
  double alpha_expected = 0.0;
  FitResult u;
  FitResult du;
  FitResult d2u;
  /// min and max of u(r) / r^alpha over the window.
  double amplitude_min = 0.0;
  double amplitude_max = 0.0;
  double amplitude_ratio = 0.0;
  double exact_amplitude = 0.0;
  bool inconclusive = false;
  std::vector<std::string> evidence;
};

/// Fits u, u', u'' over `window` and compares with alpha, alpha - 1, alpha - 2.
RateReport verify_rates(const RadialCurve& curve, const ProblemParams& params, double l,
                        FitWindow window);
RateReport verify_rates(const RadialCurve& curve, const ProblemParams& params, double l);

nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const RateReport& report);

}  // namespace hessianls
