#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hessianls/asymptotics.hpp"
#include "hessianls/cauchy.hpp"
#include "hessianls/criteria.hpp"
#include "hessianls/polyline.hpp"
#include "hessianls/sandwich.hpp"
#include "hessianls/spectrum.hpp"
#include "hessianls_cli/commands.hpp"

namespace hessianls::cli {

namespace {

using SigmaFn = double (*)(int, double, double, int);

// The mutation flips the sign of the mixed term C_{n-1}^{j-1} d2u q^{j-1}.
double sigma_sign_fault(int j, double d2u, double q, int n) {
  const double pure = sigma_j_radial(j, 0.0, q, n);
  const double mixed = sigma_j_radial(j, d2u, q, n) - pure;
  return pure - mixed;
}

std::string num(double x) { return format_double(x); }

// e_j of an explicit spectrum by the usual recurrence.
double elementary_symmetric(const std::vector<double>& lambda, int j) {
  std::vector<double> e(static_cast<std::size_t>(j) + 1, 0.0);
  e[0] = 1.0;
  for (double x : lambda) {
    for (int i = j; i >= 1; --i) e[static_cast<std::size_t>(i)] += x * e[static_cast<std::size_t>(i) - 1];
  }
  return e[static_cast<std::size_t>(j)];
}

double max_residual(SigmaFn sigma, const RadialCurve& c, const ProblemParams& p,
                    const std::vector<double>& rhs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double r = c.r(i);
    const double q = r > 0.0 ? c.du[i] / r : c.d2u[i];
    const double s = sigma(p.k, c.d2u[i], q, p.n);
    worst = std::max(worst, std::abs(s - rhs[i]) / std::max(std::abs(rhs[i]), 1e-300));
  }
  return worst;
}

std::size_t gamma_k_failures(SigmaFn sigma, const RadialCurve& c, const ProblemParams& p) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double r = c.r(i);
    const double q = r > 0.0 ? c.du[i] / r : c.d2u[i];
    for (int j = 1; j <= p.k; ++j) {
      if (!(sigma(j, c.d2u[i], q, p.n) > 0.0)) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

InvariantResult identity_collapse(SigmaFn sigma) {
  double worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    for (int j = 1; j <= n; ++j) {
      const double expected = binomial_real(n, j);
      worst = std::max(worst, std::abs(sigma(j, 1.0, 1.0, n) - expected) / expected);
    }
  }
  return {"identity_collapse", worst < 1e-14, "max relative deviation from C_n^j " + num(worst)};
}

InvariantResult radial_spectrum(SigmaFn sigma) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 6;
    const double d2u = dist(rng);
    const double q = dist(rng);
    std::vector<double> lambda(static_cast<std::size_t>(n), q);
    lambda[0] = d2u;
    for (int j = 1; j <= n; ++j) {
      const double direct = elementary_symmetric(lambda, j);
      const double scale = std::max(1.0, std::abs(direct));
      worst = std::max(worst, std::abs(sigma(j, d2u, q, n) - direct) / scale);
    }
  }
  return {"radial_spectrum_matches_elementary_symmetric", worst < 1e-11,
          "max scaled deviation " + num(worst)};
}

InvariantResult power_oracle(SigmaFn sigma) {
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int n : {k + 2, 2 * k + 1}) {
      for (double gamma : {0.25 * k, 0.5 * k, 0.75 * k}) {
        for (double l : {-1.0, 0.0, k - 1.0}) {
          const ProblemParams p{std::max(n, 3), k, gamma, 1.0};
          const auto s = exact_power_solution(p, l);
          for (double r : {1.0, 10.0, 100.0, 1e4}) {
            const double lhs = sigma(k, s.second_derivative(r), s.derivative(r) / r, p.n);
            const double rhs = std::pow(r, -l) * std::pow(s(r), gamma);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
          }
        }
      }
    }
  }
  return {"exact_power_residual", worst < 1e-10, "max relative residual " + num(worst)};
}

InvariantResult solver_curves(SigmaFn sigma) {
  const struct {
    ProblemParams p;
    RadialProfile b;
  } cases[] = {{{3, 1, 0.5, 1.0}, RadialProfile::constant(1.0)},
               {{4, 2, 1.0, 1.0}, RadialProfile::power_tail(1.0)},
               {{5, 2, 1.5, 2.0}, RadialProfile::power_tail(3.0)},
               {{6, 3, 1.0, 0.5}, RadialProfile::power_tail(2.0, 0.5, 4.0)}};
  double worst = 0.0;
  std::size_t bad = 0;
  for (const auto& c : cases) {
    const auto grid = RadialGrid::hybrid(10.0, 1e4, 40);
    const auto curve = solve_cauchy(c.p, c.b, grid);
    worst = std::max(worst, max_residual(sigma, curve, c.p, cauchy_rhs(c.p, c.b, curve)));
    bad += gamma_k_failures(sigma, curve, c.p);
  }
  return {"solver_residual_and_gamma_k", worst < 1e-6 && bad == 0,
          "max relative residual " + num(worst) + ", nodes outside Gamma_k " + std::to_string(bad)};
}

InvariantResult linear_rhs_closed_form() {
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 40);
  const auto v = solve_linear_rhs({3, 1}, RadialProfile::constant(1.0), grid);
  double worst = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double r = grid[i];
    worst = std::max(worst, std::abs(v.u[i] - r * r / 6.0) / (r * r / 6.0));
  }
  return {"linear_rhs_closed_form", worst < 1e-10, "max relative deviation from r^2/6 " + num(worst)};
}

InvariantResult b_tilde_closed_form() {
  const ProblemParams p{3, 1, 0.5, 1.0};
  const auto b = RadialProfile::constant(1.0);
  double worst = 0.0;
  for (double s : {0.5, 2.0, 10.0, 50.0}) {
    const double expected = 1.0 + s * s / 6.0;
    worst = std::max(worst, std::abs(compute_b_tilde(b, s, p) - expected) / expected);
  }
  return {"b_tilde_closed_form", worst < 1e-10, "max relative deviation from 1 + s^2/6 " + num(worst)};
}

InvariantResult comparison() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 1 + trial % 2;
    const ProblemParams p1{2 * k + 1, k, k * (0.2 + 0.6 * unit(rng)), 0.5 + unit(rng)};
    ProblemParams p2 = p1;
    p2.a += unit(rng);
    const double l = 2.0 * unit(rng);
    const auto b1 = RadialProfile::power_tail(l);
    const auto b2 = RadialProfile::power_tail(l, 0.5 + unit(rng), l);
    const auto grid = RadialGrid::hybrid(10.0, 1e3, 20);
    const auto u1 = solve_cauchy(p1, b1, grid);
    const auto u2 = solve_cauchy(p2, b2, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (u2.u[i] < u1.u[i] * (1.0 - 1e-9)) ++violations;
    }
  }
  return {"comparison_principle", violations == 0, "violations " + std::to_string(violations)};
}

InvariantResult dominance() {
  std::size_t violations = 0;
  for (int k = 1; k <= 3; ++k) {
    const ProblemParams p{2 * k + 1, k, 0.5 * k, 1.5};
    const auto b = RadialProfile::power_tail(0.5 * k);
    const auto grid = RadialGrid::hybrid(10.0, 1e3, 20);
    const auto u = solve_cauchy(p, b, grid);
    const auto bound = bounded_dominance_bound(p, b, p.a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (u.u[i] > bound.u[i] * (1.0 + 1e-9)) ++violations;
    }
  }
  return {"dominance_bound", violations == 0, "violations " + std::to_string(violations)};
}

InvariantResult threshold_algebra() {
  double worst = 0.0;
  std::size_t flips_wrong = 0;
  for (int k = 1; k <= 3; ++k) {
    const ProblemParams p{2 * k + 1, k, 0.5 * k, 1.0};
    for (double l : {0.0, 1.0 * k}) {
      const double formula = oscillation_threshold_formula(p, l);
      CriteriaOptions o;
      o.r_max = 1e3;
      o.nodes_per_decade = 20;
      const auto below = oscillation_condition(oscillating_power_triple(l, formula - 0.5, 1.0), p, o);
      const auto above = oscillation_condition(oscillating_power_triple(l, formula + 0.5, 1.0), p, o);
      if (!below.m_star) {
        worst = INFINITY;
      } else {
        worst = std::max(worst, std::abs(*below.m_star - formula));
      }
      if (below.status != ConditionStatus::violated || above.status != ConditionStatus::satisfied) {
        ++flips_wrong;
      }
    }
  }
  return {"oscillation_threshold", worst < 1e-12 && flips_wrong == 0,
          "max |m* - formula| " + num(worst) + ", wrong sides " + std::to_string(flips_wrong)};
}

InvariantResult radialize_radial() {
  NonRadialField f;
  f.dim = 3;
  f.name = "radial";
  f.value = [](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return 1.0 / (1.0 + r2);
  };
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 20);
  const auto t = radialize(f, grid, 64);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    const double exact = 1.0 / (1.0 + r * r);
    worst = std::max({worst, std::abs(t.b_star(r) - exact) / exact,
                      std::abs(t.b_upper(r) - exact) / exact, t.b_osc(r) / exact});
  }
  return {"radialize_radial_field", worst < 1e-12, "max relative envelope spread " + num(worst)};
}

InvariantResult polyline() {
  const ProblemParams p{3, 1, 0.5, 1.0};
  const auto b = RadialProfile::constant(1.0);
  const double eps = 1e-3;
  const auto line = euler_polyline(p, b, 0.5, eps);
  return {"euler_polyline_defect", line.max_defect < eps,
          "max sampled defect " + num(line.max_defect) + " for eps " + num(eps)};
}

InvariantResult fit_exact_power() {
  const auto grid = RadialGrid::hybrid(10.0, 1e4, 40);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = std::pow(grid[i], 3.0);
  const auto fit = fit_exponent(grid.nodes(), values, FitWindow::last_decades(grid.r_max()));
  return {"loglog_fit_exact_power", std::abs(fit.exponent - 3.0) < 1e-12 && fit.std_error < 1e-12,
          "exponent " + num(fit.exponent) + ", stderr " + num(fit.std_error)};
}

}  // namespace

std::vector<InvariantResult> run_invariants(const std::string& fault) {
  SigmaFn sigma = &sigma_j_radial;
  if (fault == "sigma-sign") {
    sigma = &sigma_sign_fault;
  } else if (!fault.empty()) {
    throw InvalidArgument("inject-fault", "unknown fault '" + fault + "'");
  }
  std::vector<InvariantResult> out;
  auto guarded = [&out](const char* name, const std::function<InvariantResult()>& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  guarded("identity_collapse", [&] { return identity_collapse(sigma); });
  guarded("radial_spectrum_matches_elementary_symmetric", [&] { return radial_spectrum(sigma); });
  guarded("exact_power_residual", [&] { return power_oracle(sigma); });
  guarded("solver_residual_and_gamma_k", [&] { return solver_curves(sigma); });
  guarded("linear_rhs_closed_form", linear_rhs_closed_form);
  guarded("b_tilde_closed_form", b_tilde_closed_form);
  guarded("comparison_principle", comparison);
  guarded("dominance_bound", dominance);
  guarded("oscillation_threshold", threshold_algebra);
  guarded("radialize_radial_field", radialize_radial);
  guarded("euler_polyline_defect", polyline);
  guarded("loglog_fit_exact_power", fit_exact_power);
  return out;
}

nlohmann::json to_json(const std::vector<InvariantResult>& results) {
  bool all = true;
  auto list = nlohmann::json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"name", r.name}, {"status", r.passed ? "pass" : "fail"}, {"detail", r.detail}});
  }
  return {{"passed", all}, {"invariants", list}};
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto results = run_invariants(options.inject_fault);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << '/' << results.size() << " invariants hold\n";
  const auto j = to_json(results);
  if (options.json_path == "-") {
    out << j.dump(2) << '\n';
  } else if (!options.json_path.empty()) {
    write_json_file(options.json_path, j);
  }
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace hessianls::cli
