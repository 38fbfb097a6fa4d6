#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "hessianls/criteria.hpp"
#include "hessianls/polyline.hpp"
#include "hessianls/sandwich.hpp"
#include "hessianls/spectrum.hpp"
#include "hessianls_cli/commands.hpp"

namespace hessianls::cli {

using json = nlohmann::json;

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const SpecError& e) {
    err << "error: invalid spec: " << e.what() << '\n';
    return kValidation;
  } catch (const BetaTooSmall& e) {
    err << "error: " << e.what() << "; suggested margin " << format_double(e.suggested_margin())
        << '\n';
    return kSandwichOrder;
  } catch (const PreconditionError& e) {
    err << "error: precondition: " << e.what() << '\n';
    return kInconclusive;
  } catch (const IntegrationFailure& e) {
    err << "error: integration failed: " << e.what() << " (last good r = "
        << format_double(e.last_good().r) << ")\n";
    return kIntegration;
  } catch (const RadiusTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kIntegration;
  } catch (const InvalidArgument& e) {
    err << "error: invalid argument: " << e.what() << '\n';
    return kValidation;
  } catch (const InvalidCoefficient& e) {
    err << "error: invalid coefficient: " << e.what() << '\n';
    return kValidation;
  } catch (const OutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

json solve_summary(const ProblemSpec& spec, const RadialCurve& curve,
                   const std::vector<double>& residual) {
  const auto member = gamma_k_membership(curve, spec.params);
  bool gamma_k_ok = true;
  std::size_t first_bad = 0;
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (!member[i]) {
      if (gamma_k_ok) first_bad = i;
      gamma_k_ok = false;
    }
  }
  double residual_max = 0.0;
  for (double r : residual) residual_max = std::max(residual_max, r);
  json j{{"u_at_rmax", curve.u.back()},
         {"r_max", curve.grid.r_max()},
         {"nodes", curve.size()},
         {"gamma_k_ok", gamma_k_ok},
         {"residual_max", residual_max}};
  if (!gamma_k_ok) j["gamma_k_first_failure_r"] = curve.r(first_bad);
  return j;
}

void write_plot_data(std::ostream& out, const RadialCurve& curve,
                     const std::vector<double>& residual) {
  out << "r,series,value\n" << std::setprecision(17);
  const struct {
    const char* name;
    const std::vector<double>& values;
  } series[] = {{"u", curve.u}, {"du", curve.du}, {"d2u", curve.d2u}, {"sigma_k_residual", residual}};
  for (const auto& s : series) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      out << curve.r(i) << ',' << s.name << ',' << s.values[i] << '\n';
    }
  }
}

int cmd_solve(const SolveOptions& options, std::ostream& out) {
  const auto spec = load_spec(options.spec_path);
  if (!spec.coefficient.radial()) {
    throw SpecError("coefficient.kind", std::string("solve needs a radial coefficient, got '") +
                                            to_string(spec.coefficient.kind) +
                                            "'; use the sandwich command");
  }
  const auto b = spec.radial_profile();
  const auto grid = spec.make_grid();
  const auto curve = solve_cauchy(spec.params, b, grid, spec.solver_options());
  const auto residual =
      sigma_k_residual(curve, spec.params.n, spec.params.k, cauchy_rhs(spec.params, b, curve));
  write_curve_csv(options.csv_path, curve, residual);
  auto summary = solve_summary(spec, curve, residual);
  summary["csv"] = options.csv_path;
  if (!options.plot_path.empty()) {
    std::ofstream plot(options.plot_path);
    if (!plot) throw Error("cannot write " + options.plot_path);
    write_plot_data(plot, curve, residual);
    summary["plot_data"] = options.plot_path;
  }
  if (!options.summary_path.empty()) write_json_file(options.summary_path, summary);
  out << summary.dump(2) << '\n';
  return kOk;
}

json classify_report(const ProblemSpec& spec) {
  const auto grid = spec.make_grid();
  const auto triple = spec.triple(grid);
  CriteriaOptions criteria;
  criteria.r_max = spec.grid.r_max;
  criteria.nodes_per_decade = spec.grid.nodes_per_decade;

  const auto existence = classify_existence(triple.b_star, spec.params, criteria);
  const auto osc = oscillation_condition(triple, spec.params, criteria);

  json thresholds{{"l", nullptr}, {"m", nullptr}, {"m_star", nullptr}, {"existence", 2 * spec.params.k}};
  if (osc.l) {
    thresholds["l"] = *osc.l;
    thresholds["m_star"] = oscillation_threshold_formula(spec.params, *osc.l);
  }
  if (osc.m) thresholds["m"] = *osc.m;

  json report{{"existence_verdict", to_string(existence.verdict)},
              {"osc_condition", to_string(osc.status)},
              {"i_osc", std::isfinite(osc.i_osc) ? json(osc.i_osc) : json(nullptr)},
              {"thresholds", thresholds},
              {"existence", to_json(existence)},
              {"oscillation", to_json(osc)}};
  try {
    report["jensen"] = to_json(jensen_conditions(triple.b_star, triple, spec.params, criteria));
  } catch (const Error& e) {
    report["jensen"] = {{"error", e.what()}};
  }
  return report;
}

int cmd_classify(const ClassifyOptions& options, std::ostream& out) {
  const auto spec = load_spec(options.spec_path);
  const auto report = classify_report(spec);
  if (!options.output_path.empty()) write_json_file(options.output_path, report);
  out << report.dump(2) << '\n';
  if (options.strict && (report["existence_verdict"] == "Inconclusive" ||
                         report["osc_condition"] == "inconclusive")) {
    return kInconclusive;
  }
  return kOk;
}

int cmd_sandwich(const SandwichCommandOptions& options, std::ostream& out) {
  const auto spec = load_spec(options.spec_path);
  const auto grid = spec.make_grid();
  const auto triple = spec.triple(grid);

  SandwichOptions sandwich;
  if (options.margin) sandwich.margin = *options.margin;
  sandwich.finite_horizon = options.finite_horizon;
  sandwich.solver = spec.solver_options();
  const auto result = build_sandwich(triple, spec.params, grid, sandwich);

  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  const auto v_path = (fs::path(options.out_dir) / "v.csv").string();
  const auto w_path = (fs::path(options.out_dir) / "w.csv").string();
  const auto report_path = (fs::path(options.out_dir) / "report.json").string();

  ProblemParams sub = spec.params;
  sub.a = 1.0;
  ProblemParams super = spec.params;
  super.a = result.beta;
  write_curve_csv(v_path, result.v,
                  sigma_k_residual(result.v, spec.params.n, spec.params.k,
                                   cauchy_rhs(sub, triple.b_upper, result.v)));
  write_curve_csv(w_path, result.w,
                  sigma_k_residual(result.w, spec.params.n, spec.params.k,
                                   cauchy_rhs(super, triple.b_star, result.w)));

  auto report = to_json(result);
  report["v_csv"] = v_path;
  report["w_csv"] = w_path;
  if (spec.coefficient.kind == CoefficientSpec::Kind::field) {
    const auto field = spec.field();
    if (field.known_solution) {
      const double r_max = options.ray_r_max > 0.0 ? options.ray_r_max : grid.r_max();
      const auto check = check_between(field.known_solution, field.dim, result, options.rays, r_max);
      report["known_solution"] = to_json(check);
      if (!check.between()) {
        std::cerr << "warning: the known solution leaves [v, w] on " << check.below_v << " (below v) and "
            << check.above_w << " (above w) of " << check.samples << " samples\n";
      }
    }
  }
  write_json_file(report_path, report);
  out << report.dump(2) << '\n';
  return kOk;
}

}  // namespace hessianls::cli
