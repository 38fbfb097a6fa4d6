#include "hessianls/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hessianls/errors.hpp"

namespace hessianls {

namespace {

std::string token(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << key << '=' << value;
  return os.str();
}

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::large: return "Large";
    case Verdict::bounded: return "Bounded";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::satisfied: return "satisfied";
    case ConditionStatus::violated: return "violated";
    case ConditionStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RadialGrid CriteriaOptions::grid_for(const RadialProfile& b) const {
  const double end = std::min(r_max, b.table_end());
  return RadialGrid::hybrid(std::min(10.0, end), end, nodes_per_decade);
}

double keller_osserman_integrand(const RadialProfile& b_star, double r, OperatorShape shape) {
  shape.validate();
  if (!(r > 0.0)) throw InvalidArgument("r", "integrand is evaluated at r > 0");
  // Geometric panels keep power-law integrands well resolved over many decades.
  double inner = 0.0;
  double hi = r;
  for (int j = 0; j < 40; ++j) {
    const double lo = (j == 39) ? 0.0 : 0.5 * hi;
    inner += integrate([&](double s) { return std::pow(s, shape.n - 1) * b_star(s); }, lo, hi);
    hi = lo;
  }
  const double base = shape.n / binomial_real(shape.n, shape.k) * std::pow(r, shape.k - shape.n) * inner;
  return std::pow(base, 1.0 / shape.k);
}

PowerLogTail flux_tail(const PowerLogTail& weight, OperatorShape shape) {
  const auto inner = integrate_tail(PowerLogTail::monomial(shape.n - 1) * weight);
  if (!inner) throw PreconditionError("doubly logarithmic inner integral is not supported");
  return (PowerLogTail::monomial(shape.k - shape.n) * *inner).pow(1.0 / shape.k);
}

CriterionVerdict classify_existence(const RadialProfile& b_star, const ProblemParams& params,
                                    const CriteriaOptions& options) {
  params.validate();
  CriterionVerdict out;
  out.threshold = 2.0 * params.k;

  const auto grid = options.grid_for(b_star);
  const KellerOssermanTransform transform(params.shape(), b_star.as_function(), grid);
  out.finite_part = transform.potential(grid.r_max());
  out.evidence.push_back(token("finite_part_r_max", grid.r_max()));

  const auto tail = b_star.tail();
  if (!tail) {
    out.evidence.push_back("no_tail_information");
    return out;
  }
  out.tail_exponent = tail->exponent;
  if (tail->fitted) out.tail_std_error = tail->std_error;
  out.evidence.push_back(token(tail->fitted ? "fitted_tail_exponent" : "declared_tail_exponent",
                               tail->exponent));

  const auto j_tail = flux_tail(PowerLogTail::monomial(-tail->exponent), params.shape());
  out.evidence.push_back("flux_tail=" + j_tail.describe());
  const bool diverges = !tail_integral_converges(j_tail);
  const bool dimension_forces = params.n <= 2 * params.k;
  if (dimension_forces) out.evidence.push_back("dimension_forces_divergence");

  if (tail->fitted && !dimension_forces &&
      std::abs(tail->exponent - out.threshold) <= tail->std_error) {
    out.evidence.push_back("fitted_exponent_within_one_standard_error_of_threshold");
    return out;
  }
  out.evidence.push_back(diverges ? "integral_diverges" : "integral_converges");
  out.verdict = diverges ? Verdict::large : Verdict::bounded;
  return out;
}

BTilde::BTilde(const RadialProfile& b_star, const ProblemParams& params, const RadialGrid& grid)
    : transform_(params.shape(), b_star.as_function(), grid),
      exponent_(params.k * params.gamma / (params.k - params.gamma)) {
  slope_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) slope_[i] = transform_.flux(grid[i]);
}

double BTilde::potential(double s) const {
  const auto& grid = transform_.grid();
  if (s <= 0.0) return 0.0;
  if (s >= grid.r_max()) return transform_.potential(s);
  const auto values = transform_.potential_at_nodes();
  const std::size_t i = grid.segment(s);
  const double h = grid[i + 1] - grid[i];
  const double t = (s - grid[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
         (-2 * t3 + 3 * t2) * values[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

double BTilde::operator()(double s) const { return std::pow(1.0 + potential(s), exponent_); }

double compute_b_tilde(const RadialProfile& b_star, double s, const ProblemParams& params) {
  params.validate();
  if (!(s >= 0.0)) throw InvalidArgument("s", "must be nonnegative");
  if (s == 0.0) return 1.0;
  const auto grid = RadialGrid::hybrid(std::min(10.0, s), s, 40);
  return BTilde(b_star, params, grid)(s);
}

PowerLogTail b_tilde_tail(const PowerLogTail& b_star_tail, const ProblemParams& params) {
  const auto potential = integrate_tail(flux_tail(b_star_tail, params.shape()));
  if (!potential) throw PreconditionError("doubly logarithmic potential is not supported");
  return one_plus_pow(*potential, params.k * params.gamma / (params.k - params.gamma));
}

double oscillation_threshold_formula(const ProblemParams& params, double l) {
  const double k = params.k;
  return l + (2.0 * k - l) * k / (k - params.gamma);
}

OscillationReport oscillation_condition(const RadializedTriple& triple, const ProblemParams& params,
                                        const CriteriaOptions& options) {
  params.validate();
  OscillationReport out;
  const auto l_tail = triple.b_star.tail();
  if (l_tail) out.l = l_tail->exponent;

  if (triple.b_osc.identically_zero()) {
    out.status = ConditionStatus::satisfied;
    out.evidence.push_back("oscillation_identically_zero");
    return out;
  }

  const auto m_tail = triple.b_osc.tail();
  if (m_tail) out.m = m_tail->exponent;
  if (!l_tail || !m_tail) {
    out.i_osc = std::numeric_limits<double>::infinity();
    out.evidence.push_back(!l_tail ? "no_lower_envelope_tail" : "no_oscillation_tail");
    return out;
  }

  const auto bt = b_tilde_tail(PowerLogTail::monomial(-l_tail->exponent), params);
  out.evidence.push_back("b_tilde_tail=" + bt.describe());
  const auto j_osc = flux_tail(PowerLogTail::monomial(-m_tail->exponent) * bt, params.shape());
  out.evidence.push_back("oscillation_flux_tail=" + j_osc.describe());
  const bool converges = tail_integral_converges(j_osc);

  // The outer exponent (k - (m - p))/k crosses -1 at m = 2k + p, provided the
  // inner integral still diverges there, i.e. n > 2k.
  if (params.n > 2 * params.k) {
    out.m_star = 2.0 * params.k + bt.power;
    out.evidence.push_back(token("m_star", *out.m_star));
  } else {
    out.evidence.push_back("dimension_forces_divergence");
  }

  const auto grid = options.grid_for(triple.b_star);
  const BTilde b_tilde(triple.b_star, params, grid);
  const auto& osc = triple.b_osc;
  const KellerOssermanTransform transform(
      params.shape(), [&osc, &b_tilde](double r) { return osc(r) * b_tilde(r); }, grid);
  out.finite_part = transform.potential(grid.r_max());
  out.evidence.push_back(token("finite_part_r_max", grid.r_max()));

  const bool fitted = l_tail->fitted || m_tail->fitted;
  if (fitted && out.m_star) {
    const double slack =
        m_tail->std_error + l_tail->std_error * params.gamma / (params.k - params.gamma);
    if (std::abs(*out.m - *out.m_star) <= slack) {
      out.i_osc = std::numeric_limits<double>::infinity();
      out.evidence.push_back("fitted_exponent_within_one_standard_error_of_threshold");
      return out;
    }
  }

  if (!converges) {
    out.status = ConditionStatus::violated;
    out.i_osc = std::numeric_limits<double>::infinity();
    out.evidence.push_back("integral_diverges");
    return out;
  }

  const double r_end = grid.r_max();
  const double j_end = transform.flux(r_end);
  if (j_osc.power < -1.0 - kTailTolerance) {
    out.tail_estimate = j_end * r_end / (-j_osc.power - 1.0);
  } else {
    out.tail_estimate = j_end * r_end * std::log(r_end) / (-j_osc.log_power - 1.0);
  }
  out.status = ConditionStatus::satisfied;
  out.i_osc = out.finite_part + out.tail_estimate;
  out.evidence.push_back("integral_converges");
  return out;
}

JensenReport jensen_conditions(const RadialProfile& b_star, const RadializedTriple& triple,
                               const ProblemParams& params, const CriteriaOptions& options) {
  params.validate();
  JensenReport out;
  const double k = params.k;
  const int n = params.n;
  const auto grid = options.grid_for(b_star);
  const auto l_tail = b_star.tail();

  {
    auto& c = out.power_mean_divergence;
    const CumulativeIntegral numeric(
        [&](double r) { return r * std::pow(b_star(r), 1.0 / k); }, grid);
    c.finite_part = numeric(grid.r_max());
    if (l_tail) {
      const auto t = PowerLogTail::monomial(1.0 - l_tail->exponent / k);
      c.tail = t.describe();
      c.status = tail_integral_converges(t) ? ConditionStatus::violated : ConditionStatus::satisfied;
    }
  }
  {
    const auto verdict = classify_existence(b_star, params, options);
    auto& c = out.existence_divergence;
    c.finite_part = verdict.finite_part;
    c.status = verdict.verdict == Verdict::large     ? ConditionStatus::satisfied
               : verdict.verdict == Verdict::bounded ? ConditionStatus::violated
                                                     : ConditionStatus::inconclusive;
    if (verdict.tail_exponent) {
      c.tail = flux_tail(PowerLogTail::monomial(-*verdict.tail_exponent), params.shape()).describe();
    }
  }
  {
    const auto osc = oscillation_condition(triple, params, options);
    auto& c = out.oscillation_smallness;
    c.status = osc.status;
    c.finite_part = osc.finite_part;
    for (const auto& e : osc.evidence) {
      if (e.rfind("oscillation_flux_tail=", 0) == 0) c.tail = e.substr(22);
    }
  }
  {
    auto& c = out.power_mean_oscillation;
    if (triple.b_osc.identically_zero()) {
      c.status = ConditionStatus::satisfied;
      c.tail = "0";
    } else {
      const double pre = n / std::pow(binomial_real(n, params.k), 1.0 / k);
      const double e = params.gamma / (k - params.gamma);
      const CumulativeIntegral mean_inner(
          [&](double t) { return std::pow(t, n - 1) * std::pow(b_star(t), 1.0 / k); }, grid);
      const CumulativeIntegral mean_outer(
          [&](double s) { return s > 0.0 ? std::pow(s, 1 - n) * mean_inner(s) : 0.0; }, grid);
      const auto& b_osc = triple.b_osc;
      const CumulativeIntegral numeric(
          [&](double r) {
            return r * std::pow(b_osc(r), 1.0 / k) * std::pow(1.0 + pre * mean_outer(r), e);
          },
          grid);
      c.finite_part = numeric(grid.r_max());
      const auto m_tail = b_osc.tail();
      if (l_tail && m_tail) {
        const auto inner = integrate_tail(PowerLogTail::monomial(n - 1 - l_tail->exponent / k));
        const auto g = inner ? integrate_tail(PowerLogTail::monomial(1 - n) * *inner) : std::nullopt;
        if (g) {
          const auto integrand =
              PowerLogTail::monomial(1.0 - m_tail->exponent / k) * one_plus_pow(*g, e);
          c.tail = integrand.describe();
          c.status = tail_integral_converges(integrand) ? ConditionStatus::satisfied
                                                        : ConditionStatus::violated;
        }
      }
    }
  }

  auto implies = [](const std::string& from, const ConditionReport& a, const std::string& to,
                    const ConditionReport& b) {
    return Implication{from, to,
                       !(a.status == ConditionStatus::satisfied && b.status == ConditionStatus::violated)};
  };
  out.implications.push_back(implies("power_mean_divergence", out.power_mean_divergence,
                                     "existence_divergence", out.existence_divergence));
  out.implications.push_back(implies("oscillation_smallness", out.oscillation_smallness,
                                     "power_mean_oscillation", out.power_mean_oscillation));
  return out;
}

std::vector<double> bounded_solution_bound(const ProblemParams& params,
                                           const KellerOssermanTransform& transform) {
  const double k = params.k;
  const double ratio = (k - params.gamma) / k;
  const double base = std::pow(params.a, ratio);
  const auto potential = transform.potential_at_nodes();
  std::vector<double> out(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) {
    out[i] = std::pow(base + ratio * potential[i], 1.0 / ratio);
  }
  return out;
}

double bounded_solution_bound(const ProblemParams& params, const RadialProfile& b_star, double r) {
  params.validate();
  if (!(r >= 0.0)) throw InvalidArgument("r", "must be nonnegative");
  if (r == 0.0) return params.a;
  const auto grid = RadialGrid::hybrid(std::min(10.0, r), r, 40);
  const KellerOssermanTransform transform(params.shape(), b_star.as_function(), grid);
  return bounded_solution_bound(params, transform).back();
}

nlohmann::json to_json(const CriterionVerdict& v) {
  return {{"verdict", to_string(v.verdict)},
          {"tail_exponent", optional_json(v.tail_exponent)},
          {"tail_std_error", optional_json(v.tail_std_error)},
          {"threshold", v.threshold},
          {"finite_part", finite_or_null(v.finite_part)},
          {"evidence", v.evidence}};
}

nlohmann::json to_json(const OscillationReport& r) {
  return {{"status", to_string(r.status)},
          {"i_osc", finite_or_null(r.i_osc)},
          {"finite_part", finite_or_null(r.finite_part)},
          {"tail_estimate", finite_or_null(r.tail_estimate)},
          {"l", optional_json(r.l)},
          {"m", optional_json(r.m)},
          {"m_star", optional_json(r.m_star)},
          {"evidence", r.evidence}};
}

nlohmann::json to_json(const JensenReport& r) {
  auto cond = [](const ConditionReport& c) {
    return nlohmann::json{{"status", to_string(c.status)},
                          {"finite_part", finite_or_null(c.finite_part)},
                          {"tail", c.tail}};
  };
  nlohmann::json imps = nlohmann::json::array();
  for (const auto& i : r.implications) {
    imps.push_back({{"from", i.from}, {"to", i.to}, {"consistent", i.consistent}});
  }
  return {{"power_mean_divergence", cond(r.power_mean_divergence)},
          {"existence_divergence", cond(r.existence_divergence)},
          {"oscillation_smallness", cond(r.oscillation_smallness)},
          {"power_mean_oscillation", cond(r.power_mean_oscillation)},
          {"implications", imps}};
}

}  // namespace hessianls
