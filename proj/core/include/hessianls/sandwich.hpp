#pragma once

#include <nlohmann/json.hpp>
#include <vector>

#include "hessianls/cauchy.hpp"
#include "hessianls/criteria.hpp"
#include "hessianls/field.hpp"

namespace hessianls {

/// The supersolution datum beta was too small: v exceeded w at `radius`.
class BetaTooSmall : public Error {
 public:
  BetaTooSmall(const std::string& what, double radius, double suggested_margin)
      : Error(what), radius_(radius), suggested_margin_(suggested_margin) {}
  double radius() const noexcept { return radius_; }
  double suggested_margin() const noexcept { return suggested_margin_; }

 private:
  double radius_;
  double suggested_margin_;
};

struct SandwichOptions {
  /// Additive margin in beta = 1 + I_osc + margin; negative selects
  /// max(1, 0.1 I_osc).
  double margin = -1.0;
  /// Accept a divergent oscillation integral and size beta from its finite
  /// part on [0, r_max]. The ordering is then certified only on the grid.
  bool finite_horizon = false;
  SolverOptions solver;
};

/// v solves the radial problem with the upper envelope from v(0) = 1, w with
/// the lower envelope from w(0) = beta.
struct SandwichReport {
  RadialCurve v;
  RadialCurve w;
  double beta = 0.0;
  double margin = 0.0;
  double min_margin = 0.0;
  double min_margin_radius = 0.0;
  double osc_integral = 0.0;
  bool finite_horizon = false;
  OscillationReport oscillation;
};

/// Builds and checks v <= w on the grid. Throws PreconditionError when the
/// oscillation integral is not finite (unless finite_horizon), BetaTooSmall
/// when the ordering fails.
SandwichReport build_sandwich(const RadializedTriple& triple, const ProblemParams& params,
                              const RadialGrid& grid, const SandwichOptions& options = {});

/// (beta^{(k-g)/k} + ((k-g)/k) int_0^r J_*)^{k/(k-g)}, an upper bound for the
/// lower-envelope solution started at beta.
double supersolution_envelope(const ProblemParams& params, const RadialProfile& b_star, double beta,
                              double r);
std::vector<double> supersolution_envelope(const ProblemParams& params, double beta,
                                           const KellerOssermanTransform& transform);

/// r -> 2^{g/(k-g)} (u0 + v(r)^{k/(k-g)}) with v the solution of S_k(D^2 v) = b,
/// v(0) = 0. Dominates the radial solution started at u0.
RadialCurve bounded_dominance_bound(const ProblemParams& params, const RadialProfile& b_star,
                                    double u0, const RadialGrid& grid);

/// Samples a known non-radial solution along rays and compares it with the
/// radial pair (v, w) node by node.
struct RayCheck {
  std::size_t rays = 0;
  std::size_t samples = 0;
  std::size_t below_v = 0;  // u(x) < v(|x|)
  std::size_t above_w = 0;  // u(x) > w(|x|)
  double worst_lower_gap = 0.0;  // min over samples of (u - v) / v
  double worst_upper_gap = 0.0;  // min over samples of (w - u) / w
  double first_lower_violation_radius = -1.0;
  double first_upper_violation_radius = -1.0;

  bool between() const { return below_v == 0 && above_w == 0; }
};

/// Coordinate axes (both signs) followed by deterministic pseudo-random
/// directions, `count` in total.
std::vector<std::vector<double>> sample_rays(int dim, std::size_t count, unsigned seed = 20240229u);

RayCheck check_between(const ScalarField& solution, int dim, const SandwichReport& report,
                       std::size_t rays, double r_max, double rel_slack = 0.0);

nlohmann::json to_json(const SandwichReport& report);
nlohmann::json to_json(const RayCheck& check);

}  // namespace hessianls
