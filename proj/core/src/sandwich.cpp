#include "hessianls/sandwich.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hessianls {

SandwichReport build_sandwich(const RadializedTriple& triple, const ProblemParams& params,
                              const RadialGrid& grid, const SandwichOptions& options) {
  params.validate();
  SandwichReport report;
  CriteriaOptions criteria;
  criteria.r_max = grid.r_max();
  report.oscillation = oscillation_condition(triple, params, criteria);

  double integral = report.oscillation.i_osc;
  if (report.oscillation.status != ConditionStatus::satisfied) {
    if (!options.finite_horizon) {
      throw PreconditionError(std::string("oscillation condition is ") +
                              to_string(report.oscillation.status) +
                              "; the sandwich needs a finite oscillation integral");
    }
    integral = report.oscillation.finite_part;
    report.finite_horizon = true;
  }
  report.osc_integral = integral;
  report.margin = options.margin >= 0.0 ? options.margin : std::max(1.0, 0.1 * integral);
  report.beta = 1.0 + integral + report.margin;

  ProblemParams sub = params;
  sub.a = 1.0;
  ProblemParams super = params;
  super.a = report.beta;
  report.v = solve_cauchy(sub, triple.b_upper, grid, options.solver);
  report.w = solve_cauchy(super, triple.b_star, grid, options.solver);

  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gap = report.w.u[i] - report.v.u[i];
    if (gap < report.min_margin) {
      report.min_margin = gap;
      report.min_margin_radius = grid[i];
    }
  }
  if (report.min_margin < 0.0) {
    const double suggested = report.margin + 2.0 * (-report.min_margin) + 1.0;
    throw BetaTooSmall("sandwich ordering fails: v exceeds w by " +
                           std::to_string(-report.min_margin) + " at r = " +
                           std::to_string(report.min_margin_radius),
                       report.min_margin_radius, suggested);
  }
  return report;
}

std::vector<double> supersolution_envelope(const ProblemParams& params, double beta,
                                           const KellerOssermanTransform& transform) {
  const double ratio = (params.k - params.gamma) / params.k;
  const double base = std::pow(beta, ratio);
  const auto potential = transform.potential_at_nodes();
  std::vector<double> out(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) {
    out[i] = std::pow(base + ratio * potential[i], 1.0 / ratio);
  }
  return out;
}

double supersolution_envelope(const ProblemParams& params, const RadialProfile& b_star, double beta,
                              double r) {
  params.validate();
  if (!(beta >= 1.0)) throw InvalidArgument("beta", "must be >= 1");
  if (!(r >= 0.0)) throw InvalidArgument("r", "must be nonnegative");
  if (r == 0.0) return beta;
  const auto grid = RadialGrid::hybrid(std::min(10.0, r), r, 40);
  const KellerOssermanTransform transform(params.shape(), b_star.as_function(), grid);
  return supersolution_envelope(params, beta, transform).back();
}

RadialCurve bounded_dominance_bound(const ProblemParams& params, const RadialProfile& b_star,
                                    double u0, const RadialGrid& grid) {
  params.validate();
  if (!(u0 > 0.0)) throw InvalidArgument("u0", "must be positive");
  const auto base = solve_linear_rhs(params.shape(), b_star, grid);
  const double p = params.sublinear_exponent();
  const double factor = std::pow(2.0, params.gamma / (params.k - params.gamma));
  RadialCurve out{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size()),
                  std::vector<double>(grid.size()), {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = base.u[i];
    out.u[i] = factor * (u0 + std::pow(v, p));
    if (v > 0.0) {
      out.du[i] = factor * p * std::pow(v, p - 1.0) * base.du[i];
      out.d2u[i] = factor * p *
                   ((p - 1.0) * std::pow(v, p - 2.0) * base.du[i] * base.du[i] +
                    std::pow(v, p - 1.0) * base.d2u[i]);
    }
  }
  return out;
}

std::vector<std::vector<double>> sample_rays(int dim, std::size_t count, unsigned seed) {
  std::vector<std::vector<double>> rays;
  for (int axis = 0; axis < dim && rays.size() < count; ++axis) {
    for (double sign : {1.0, -1.0}) {
      if (rays.size() == count) break;
      std::vector<double> d(static_cast<std::size_t>(dim), 0.0);
      d[static_cast<std::size_t>(axis)] = sign;
      rays.push_back(std::move(d));
    }
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  while (rays.size() < count) {
    std::vector<double> d(static_cast<std::size_t>(dim));
    double norm = 0.0;
    for (double& c : d) {
      c = normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    for (double& c : d) c /= norm;
    rays.push_back(std::move(d));
  }
  return rays;
}

RayCheck check_between(const ScalarField& solution, int dim, const SandwichReport& report,
                       std::size_t ray_count, double r_max, double rel_slack) {
  RayCheck check;
  check.worst_lower_gap = std::numeric_limits<double>::infinity();
  check.worst_upper_gap = std::numeric_limits<double>::infinity();
  const auto rays = sample_rays(dim, ray_count);
  check.rays = rays.size();
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (const auto& d : rays) {
    for (std::size_t i = 0; i < report.v.size(); ++i) {
      const double r = report.v.r(i);
      if (r > r_max * (1.0 + 1e-12)) break;
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = r * d[j];
      const double u = solution(x);
      const double v = report.v.u[i];
      const double w = report.w.u[i];
      ++check.samples;
      check.worst_lower_gap = std::min(check.worst_lower_gap, (u - v) / v);
      check.worst_upper_gap = std::min(check.worst_upper_gap, (w - u) / w);
      if (u < v * (1.0 - rel_slack)) {
        ++check.below_v;
        if (check.first_lower_violation_radius < 0.0 || r < check.first_lower_violation_radius) {
          check.first_lower_violation_radius = r;
        }
      }
      if (u > w * (1.0 + rel_slack)) {
        ++check.above_w;
        if (check.first_upper_violation_radius < 0.0 || r < check.first_upper_violation_radius) {
          check.first_upper_violation_radius = r;
        }
      }
    }
  }
  return check;
}

nlohmann::json to_json(const SandwichReport& report) {
  return {{"beta", report.beta},
          {"margin", report.margin},
          {"min_margin", report.min_margin},
          {"min_margin_radius", report.min_margin_radius},
          {"osc_integral", report.osc_integral},
          {"finite_horizon", report.finite_horizon},
          {"oscillation", to_json(report.oscillation)}};
}

nlohmann::json to_json(const RayCheck& c) {
  return {{"rays", c.rays},
          {"samples", c.samples},
          {"below_v", c.below_v},
          {"above_w", c.above_w},
          {"between", c.between()},
          {"worst_lower_gap", c.worst_lower_gap},
          {"worst_upper_gap", c.worst_upper_gap},
          {"first_lower_violation_radius", c.first_lower_violation_radius},
          {"first_upper_violation_radius", c.first_upper_violation_radius}};
}

}  // namespace hessianls
