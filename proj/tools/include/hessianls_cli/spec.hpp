#pragma once

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hessianls/cauchy.hpp"
#include "hessianls/field.hpp"
#include "hessianls/grid.hpp"
#include "hessianls/params.hpp"
#include "hessianls/profile.hpp"

namespace hessianls::cli {

/// A spec file failed validation. `path()` is a dotted field path such as
/// "coefficient.l" or "grid.r_max".
class SpecError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
  const std::string& path() const noexcept { return field(); }
};

struct CoefficientSpec {
  enum class Kind { constant, power_tail, tabulated, field, oscillating_power, envelopes };
  Kind kind = Kind::constant;

  double value = 1.0;  // constant

  // power_tail: (r0^2 + r^2)^{-l/2} + amplitude (r0^2 + r^2)^{-m/2};
  // oscillating_power: b_* = power_tail(l), b_osc = amplitude (r0^2 + r^2)^{-m/2}.
  double l = 0.0;
  double m = 0.0;
  double amplitude = 0.0;
  double r0 = 1.0;

  // tabulated: inline samples or a CSV path (relative to the problem spec file).
  std::string path;
  std::vector<double> r;
  std::vector<double> b;
  std::optional<double> tail_exponent;

  // field: a built-in non-radial coefficient.
  std::string name;
  std::size_t sphere_points = 256;

  // envelopes: lower and upper radial coefficients.
  std::vector<CoefficientSpec> envelopes;
  std::optional<double> oscillation_tail;

  bool radial() const;
};

struct GridSpec {
  double r_lin = 10.0;
  double r_max = 1e4;
  int nodes_per_decade = 40;
  int linear_nodes = 100;
};

struct ToleranceSpec {
  double rel = 1e-8;
  double abs = 1e-12;
};

struct ProblemSpec {
  ProblemParams params;
  CoefficientSpec coefficient;
  GridSpec grid;
  ToleranceSpec tolerances;
  /// Directory that relative coefficient paths resolve against.
  std::string base_dir;

  RadialGrid make_grid() const;
  SolverOptions solver_options() const;
  /// The radial coefficient; throws SpecError for non-radial kinds.
  RadialProfile radial_profile() const;
  /// Envelopes and oscillation of the coefficient on the problem spec grid.
  RadializedTriple triple(const RadialGrid& grid) const;
  /// The named field for kind == field.
  NonRadialField field() const;
};

const char* to_string(CoefficientSpec::Kind kind);

/// Parses and validates; throws SpecError with the offending path.
ProblemSpec parse_spec(const nlohmann::json& j, const std::string& base_dir = "");
ProblemSpec load_spec(const std::string& path);

/// Canonical form: every field relevant to the coefficient kind, defaults
/// spelled out. parse_spec(to_json(s)) reproduces s.
nlohmann::json to_json(const ProblemSpec& spec);
nlohmann::json to_json(const CoefficientSpec& c);

/// Checks the invariants of a spec built in code.
void validate(const ProblemSpec& spec);

}  // namespace hessianls::cli
