#include <CLI11.hpp>
#include <iostream>

#include "hessianls_cli/commands.hpp"

using namespace hessianls::cli;

int main(int argc, char** argv) {
  CLI::App app{"Radial k-Hessian solver: solve, classify, sandwich, sweep, verify"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Integrate the radial Cauchy problem");
  solve_cmd->add_option("spec", solve.spec_path, "Problem spec (JSON)")->required();
  solve_cmd->add_option("-o,--output", solve.csv_path, "Curve CSV")->capture_default_str();
  solve_cmd->add_option("--summary", solve.summary_path, "Also write the summary JSON here");
  solve_cmd->add_option("--plot-data", solve.plot_path, "Long-format r,series,value CSV");

  ClassifyOptions classify;
  auto* classify_cmd = app.add_subcommand("classify", "Existence verdict and oscillation condition");
  classify_cmd->add_option("spec", classify.spec_path, "Problem spec (JSON)")->required();
  classify_cmd->add_flag("--strict", classify.strict, "Exit 3 when a verdict is inconclusive");
  classify_cmd->add_option("-o,--output", classify.output_path, "Also write the report here");

  SandwichCommandOptions sandwich;
  double margin = -1.0;
  auto* sandwich_cmd = app.add_subcommand("sandwich", "Build the radial sub/supersolution pair");
  sandwich_cmd->add_option("spec", sandwich.spec_path, "Problem spec (JSON)")->required();
  sandwich_cmd->add_option("-d,--out-dir", sandwich.out_dir, "Directory for v.csv, w.csv, report.json")
      ->capture_default_str();
  auto* margin_opt = sandwich_cmd->add_option("--margin", margin, "beta = 1 + I_osc + margin");
  sandwich_cmd->add_flag("--finite-horizon", sandwich.finite_horizon,
                         "Size beta from the oscillation integral on [0, r_max] only");
  sandwich_cmd->add_option("--rays", sandwich.rays, "Rays for the known-solution check")
      ->capture_default_str();
  sandwich_cmd->add_option("--ray-r-max", sandwich.ray_r_max, "Radius of the known-solution check");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over a spec template");
  sweep_cmd->add_option("spec", sweep.spec_path, "Template spec (JSON)")->required();
  sweep_cmd->add_option("--vary", sweep.vary, "name=v1,v2,... or name=start:stop:step");
  sweep_cmd->add_option("-j,--jobs", sweep.jobs, "Concurrent cells (HESSIANLS_JOBS overrides)")
      ->capture_default_str();
  sweep_cmd->add_option("-o,--output", sweep.output_path, "Table CSV (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("--json", verify.json_path, "Write the machine summary here ('-' for stdout)");
  verify_cmd->add_option("--inject-fault", verify.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }

  return run_guarded(
      [&]() -> int {
        if (*solve_cmd) return cmd_solve(solve, std::cout);
        if (*classify_cmd) return cmd_classify(classify, std::cout);
        if (*sandwich_cmd) {
          if (*margin_opt) sandwich.margin = margin;
          return cmd_sandwich(sandwich, std::cout);
        }
        if (*sweep_cmd) return cmd_sweep(sweep, std::cout);
        return cmd_verify(verify, std::cout);
      },
      std::cerr);
}
