#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hessianls_cli/spec.hpp"

namespace hessianls::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIntegration = 2,
  kInconclusive = 3,  // also unmet preconditions
  kSandwichOrder = 4,
  kVerifyFailed = 5,
};

/// Runs `body`, mapping library exceptions to exit codes and printing the
/// message to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

struct SolveOptions {
  std::string spec_path;
  std::string csv_path = "solution.csv";
  std::string summary_path;  // empty: summary only on stdout
  std::string plot_path;     // long-format r,series,value CSV
};
int cmd_solve(const SolveOptions& options, std::ostream& out);

/// {u_at_rmax, gamma_k_ok, residual_max, ...} for a solved curve.
nlohmann::json solve_summary(const ProblemSpec& spec, const RadialCurve& curve,
                             const std::vector<double>& residual);
void write_plot_data(std::ostream& out, const RadialCurve& curve,
                     const std::vector<double>& residual);

struct ClassifyOptions {
  std::string spec_path;
  bool strict = false;
  std::string output_path;
};
int cmd_classify(const ClassifyOptions& options, std::ostream& out);

/// {existence_verdict, osc_condition, thresholds {l, m, m_star}, ...}.
nlohmann::json classify_report(const ProblemSpec& spec);

struct SandwichCommandOptions {
  std::string spec_path;
  std::string out_dir = ".";
  std::optional<double> margin;
  bool finite_horizon = false;
  std::size_t rays = 16;
  /// Radius out to which a known solution is sampled; <= 0 means r_max.
  double ray_r_max = -1.0;
};
int cmd_sandwich(const SandwichCommandOptions& options, std::ostream& out);

/// One parameter axis of a sweep, parsed from `name=v1,v2,...` or
/// `name=start:stop:step` (inclusive). An empty right-hand side is an empty
/// axis.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};
SweepAxis parse_axis(const std::string& text);

struct SweepRow {
  int k = 0;
  int n = 0;
  double gamma = 0.0;
  std::optional<double> l;
  std::string verdict;
  std::optional<double> fitted_alpha;
  std::optional<double> expected_alpha;
  std::optional<double> amplitude_ratio;
  std::string error;
};

/// Cartesian product of the axes in the given order (last axis fastest).
/// Cells run on up to `jobs` threads; the result order never depends on it.
std::vector<SweepRow> run_sweep(const ProblemSpec& base, const std::vector<SweepAxis>& axes,
                                int jobs);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct SweepOptions {
  std::string spec_path;
  std::vector<std::string> vary;
  int jobs = 1;
  std::string output_path;  // empty: stdout
};
/// HESSIANLS_JOBS, when set, overrides options.jobs.
int cmd_sweep(const SweepOptions& options, std::ostream& out);

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// `fault` selects a deliberate mutation ("sigma-sign" flips the sign of the
/// mixed term in the radial sigma_j) so the suite can be shown to bite.
std::vector<InvariantResult> run_invariants(const std::string& fault = "");
nlohmann::json to_json(const std::vector<InvariantResult>& results);

struct VerifyOptions {
  std::string json_path;  // "-" for stdout after the summary
  std::string inject_fault;
};
int cmd_verify(const VerifyOptions& options, std::ostream& out);

/// Writes with 17 significant digits.
std::string format_double(double x);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace hessianls::cli
