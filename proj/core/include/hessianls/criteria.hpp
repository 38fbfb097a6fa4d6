#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hessianls/field.hpp"
#include "hessianls/grid.hpp"
#include "hessianls/params.hpp"
#include "hessianls/profile.hpp"
#include "hessianls/quadrature.hpp"
#include "hessianls/tail.hpp"

namespace hessianls {

enum class Verdict { large, bounded, inconclusive };
enum class ConditionStatus { satisfied, violated, inconclusive };

const char* to_string(Verdict v);
const char* to_string(ConditionStatus s);

/// Where finite parts of the improper integrals are computed.
struct CriteriaOptions {
  double r_max = 1e4;
  int nodes_per_decade = 40;

  /// Grid on [0, r_max] (clipped to the end of tabulated data).
  RadialGrid grid_for(const RadialProfile& b) const;
};

struct CriterionVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> tail_exponent;
  std::optional<double> tail_std_error;
  /// Critical decay rate: Large iff the tail exponent is <= threshold (or the
  /// dimension forces divergence).
  double threshold = 0.0;
  /// int_0^{r_max} J(r) dr.
  double finite_part = 0.0;
  std::vector<std::string> evidence;
};

struct OscillationReport {
  ConditionStatus status = ConditionStatus::inconclusive;
  /// Finite part plus tail estimate; +inf when the integral diverges.
  double i_osc = 0.0;
  double finite_part = 0.0;
  double tail_estimate = 0.0;
  std::optional<double> l;
  std::optional<double> m;
  /// Critical oscillation decay from the tail algebra; absent when no decay
  /// rate can make the integral converge.
  std::optional<double> m_star;
  std::vector<std::string> evidence;
};

struct ConditionReport {
  ConditionStatus status = ConditionStatus::inconclusive;
  double finite_part = 0.0;
  std::string tail;
};

struct Implication {
  std::string from;
  std::string to;
  bool consistent = true;
};

/// The four integral conditions and the two one-way implications between
/// them (a stronger divergence implies the existence divergence; the
/// oscillation smallness implies its power-mean form).
struct JensenReport {
  ConditionReport power_mean_divergence;   // int r b_*^{1/k} dr = inf
  ConditionReport existence_divergence;    // int J_* dr = inf
  ConditionReport oscillation_smallness;   // int J_osc dr < inf
  ConditionReport power_mean_oscillation;  // int r b_osc^{1/k} (1 + ...)^{gamma/(k-gamma)} < inf
  std::vector<Implication> implications;
};

/// J(r) = (n r^{k-n} / C_n^k int_0^r s^{n-1} b_*(s) ds)^{1/k}, inner integral
/// by adaptive quadrature.
double keller_osserman_integrand(const RadialProfile& b_star, double r, OperatorShape shape);

/// Tail of J for a weight with the given tail.
PowerLogTail flux_tail(const PowerLogTail& weight, OperatorShape shape);

/// Large iff int^inf J = inf. For b_* ~ r^{-l} this reads min(l, n) <= 2k.
CriterionVerdict classify_existence(const RadialProfile& b_star, const ProblemParams& params,
                                    const CriteriaOptions& options = {});

/// b~(s) = (1 + int_0^s J_*(t) dt)^{k gamma / (k - gamma)} tabulated on a grid.
/// Exact at nodes; between nodes the potential is cubic Hermite in its node
/// values and slopes J_*.
class BTilde {
 public:
  BTilde(const RadialProfile& b_star, const ProblemParams& params, const RadialGrid& grid);
  double operator()(double s) const;
  double potential(double s) const;

 private:
  KellerOssermanTransform transform_;
  std::vector<double> slope_;
  double exponent_;
};

double compute_b_tilde(const RadialProfile& b_star, double s, const ProblemParams& params);

/// Tail shape of b~ for b_* with the given tail.
PowerLogTail b_tilde_tail(const PowerLogTail& b_star_tail, const ProblemParams& params);

/// int_0^inf (n r^{k-n} / C_n^k int_0^r s^{n-1} b_osc b~ ds)^{1/k} dr < inf ?
OscillationReport oscillation_condition(const RadializedTriple& triple, const ProblemParams& params,
                                        const CriteriaOptions& options = {});

/// The closed-form threshold l + (2k - l) k / (k - gamma).
double oscillation_threshold_formula(const ProblemParams& params, double l);

JensenReport jensen_conditions(const RadialProfile& b_star, const RadializedTriple& triple,
                               const ProblemParams& params, const CriteriaOptions& options = {});

/// (a^{(k-g)/k} + ((k-g)/k) int_0^r J)^{k/(k-g)}: upper envelope of the radial
/// solution with datum a.
double bounded_solution_bound(const ProblemParams& params, const RadialProfile& b_star, double r);
std::vector<double> bounded_solution_bound(const ProblemParams& params,
                                           const KellerOssermanTransform& transform);

nlohmann::json to_json(const CriterionVerdict& v);
nlohmann::json to_json(const OscillationReport& r);
nlohmann::json to_json(const JensenReport& r);

}  // namespace hessianls
