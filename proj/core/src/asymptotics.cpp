#include "hessianls/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hessianls/errors.hpp"
#include "hessianls/spectrum.hpp"

namespace hessianls {

double PowerSolution::operator()(double r) const { return C * std::pow(r, alpha); }

double PowerSolution::derivative(double r) const { return C * alpha * std::pow(r, alpha - 1.0); }

double PowerSolution::second_derivative(double r) const {
  return C * alpha * (alpha - 1.0) * std::pow(r, alpha - 2.0);
}

PowerSolution exact_power_solution(const ProblemParams& params, double l, double r0) {
  params.validate();
  if (!std::isfinite(l)) throw InvalidArgument("l", "must be finite");
  if (l > params.k - 1 + 1e-12) {
    throw InvalidArgument("l", "exact power solution requires l <= k - 1");
  }
  const double k = params.k;
  const double n = params.n;
  PowerSolution s;
  s.alpha = (2.0 * k - l) / (k - params.gamma);
  const double shape = n + (s.alpha - 2.0) * k;
  if (!(shape > 0.0)) throw InvalidArgument("l", "n + (alpha - 2) k must be positive");
  s.C = std::pow(n / (binomial_real(params.n, params.k) * shape * std::pow(s.alpha, k)),
                 1.0 / (k - params.gamma));
  s.r0 = r0;
  return s;
}

double power_solution_residual(const ProblemParams& params, double l, const PowerSolution& s,
                               double r) {
  const double lhs = sigma_j_radial(params.k, s.second_derivative(r), s.derivative(r) / r, params.n);
  const double rhs = std::pow(r, -l) * std::pow(s(r), params.gamma);
  return std::abs(lhs - rhs) / rhs;
}

FitResult fit_exponent(std::span<const double> r, std::span<const double> values,
                       FitWindow window) {
  return fit_loglog(r, values, window, 20);
}

RateReport verify_rates(const RadialCurve& curve, const ProblemParams& params, double l,
                        FitWindow window) {
  params.validate();
  RateReport report;
  report.alpha_expected = (2.0 * params.k - l) / (params.k - params.gamma);
  const auto nodes = curve.grid.nodes();
  report.u = fit_exponent(nodes, curve.u, window);
  report.du = fit_exponent(nodes, curve.du, window);
  report.d2u = fit_exponent(nodes, curve.d2u, window);

  report.amplitude_min = std::numeric_limits<double>::infinity();
  report.amplitude_max = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r = curve.r(i);
    if (r < window.r_lo || r > window.r_hi) continue;
    const double a = curve.u[i] / std::pow(r, report.alpha_expected);
    report.amplitude_min = std::min(report.amplitude_min, a);
    report.amplitude_max = std::max(report.amplitude_max, a);
  }
  report.amplitude_ratio = report.amplitude_max / report.amplitude_min;
  if (l <= params.k - 1 + 1e-12) {
    report.exact_amplitude = exact_power_solution(params, l).C;
  }

  const struct {
    const char* name;
    const FitResult& fit;
    double expected;
  } rows[] = {{"u", report.u, report.alpha_expected},
              {"du", report.du, report.alpha_expected - 1.0},
              {"d2u", report.d2u, report.alpha_expected - 2.0}};
  for (const auto& row : rows) {
    std::ostringstream line;
    line << row.name << ": exponent " << row.fit.exponent << " (expected " << row.expected
         << ", stderr " << row.fit.std_error << ")";
    report.evidence.push_back(line.str());
    if (row.fit.std_error > 0.05) report.inconclusive = true;
  }
  if (report.inconclusive) report.evidence.emplace_back("fit window is not asymptotic");
  return report;
}

RateReport verify_rates(const RadialCurve& curve, const ProblemParams& params, double l) {
  return verify_rates(curve, params, l, FitWindow::last_decades(curve.grid.r_max()));
}

nlohmann::json to_json(const FitResult& fit) {
  return {{"exponent", fit.exponent},
          {"stderr", fit.std_error},
          {"window", {fit.r_lo, fit.r_hi}},
          {"count", fit.count}};
}

nlohmann::json to_json(const RateReport& report) {
  return {{"alpha_expected", report.alpha_expected},
          {"fits", {{"u", to_json(report.u)}, {"du", to_json(report.du)}, {"d2u", to_json(report.d2u)}}},
          {"amplitude_ratio", report.amplitude_ratio},
          {"amplitude_min", report.amplitude_min},
          {"amplitude_max", report.amplitude_max},
          {"exact_amplitude", report.exact_amplitude},
          {"inconclusive", report.inconclusive},
          {"evidence", report.evidence}};
}

}  // namespace hessianls
