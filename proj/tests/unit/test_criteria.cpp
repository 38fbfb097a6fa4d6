#include <gtest/gtest.h>

#include <cmath>

#include "hessianls/criteria.hpp"
#include "hessianls/errors.hpp"
#include "support/oracles.hpp"

using namespace hessianls;

TEST(ClassifyExistence, PowerTailsAroundTheThreshold) {
  for (int k = 1; k <= 3; ++k) {
    const ProblemParams p{2 * k + 1, k, 0.5 * k, 1.0};
    EXPECT_EQ(classify_existence(RadialProfile::power_tail(2 * k - 0.5), p).verdict, Verdict::large);
    EXPECT_EQ(classify_existence(RadialProfile::power_tail(2.0 * k), p).verdict, Verdict::large);
    EXPECT_EQ(classify_existence(RadialProfile::power_tail(2 * k + 0.5), p).verdict, Verdict::bounded);
  }
}

TEST(ClassifyExistence, LowDimensionAlwaysDiverges) {
  // For n <= 2k the flux decays no faster than r^{(k-n)/k}, whatever b does.
  const ProblemParams p{4, 2, 1.0, 1.0};
  const auto v = classify_existence(RadialProfile::power_tail(10.0), p);
  EXPECT_EQ(v.verdict, Verdict::large);
  EXPECT_NE(std::find(v.evidence.begin(), v.evidence.end(), "dimension_forces_divergence"),
            v.evidence.end());
}

TEST(ClassifyExistence, FittedTieIsInconclusive) {
  // log b = -2 log r + delta (-1)^i: the alternating term is even about the
  // window centre, so the fitted slope is exactly the threshold while its
  // standard error is positive.
  std::vector<double> r{0.0}, b{1.0};
  for (int i = 0; i <= 40; ++i) {
    r.push_back(std::pow(10.0, i / 10.0));
    b.push_back(std::pow(r.back(), -2.0) * std::exp(0.05 * (i % 2 ? -1.0 : 1.0)));
  }
  const auto profile = RadialProfile::tabulated(r, b);
  const ProblemParams p{3, 1, 0.5, 1.0};
  const auto v = classify_existence(profile, p);
  ASSERT_TRUE(v.tail_std_error);
  EXPECT_GT(*v.tail_std_error, 0.0);
  EXPECT_NEAR(*v.tail_exponent, 2.0, 1e-12);
  EXPECT_EQ(v.verdict, Verdict::inconclusive);
}

TEST(ClassifyExistence, FiniteIntegrandMatchesOracle) {
  const auto b = RadialProfile::power_tail(1.0);
  for (double r : {0.5, 5.0, 50.0}) {
    const double inner = oracle::simpson([&](double s) { return s * s * b(s); }, 0.0, r, 20000);
    EXPECT_NEAR(keller_osserman_integrand(b, r, {3, 1}), 3.0 * inner / (3.0 * r * r), 1e-10);
  }
}

TEST(BTilde, ConstantCoefficientClosedForm) {
  const ProblemParams p{3, 1, 0.5, 1.0};
  for (double s : {0.0, 0.3, 4.0, 80.0}) {
    EXPECT_NEAR(compute_b_tilde(RadialProfile::constant(1.0), s, p), 1.0 + s * s / 6.0,
                1e-12 * (1.0 + s * s / 6.0));
  }
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 40);
  const BTilde tabulated(RadialProfile::constant(1.0), p, grid);
  for (double s : {0.123, 3.21, 47.0}) EXPECT_NEAR(tabulated(s), 1.0 + s * s / 6.0, 1e-9 * s * s);
}

TEST(BoundedSolutionBound, ConstantCoefficientClosedForm) {
  const ProblemParams p{3, 1, 0.5, 1.0};
  for (double r : {0.0, 1.0, 10.0, 200.0}) {
    const double expected = std::pow(1.0 + r * r / 12.0, 2);
    EXPECT_NEAR(bounded_solution_bound(p, RadialProfile::constant(1.0), r), expected, 1e-12 * expected);
  }
}

TEST(OscillationCondition, ThresholdMatchesFormulaAndFlips) {
  for (int k = 1; k <= 3; ++k) {
    for (double gamma : {0.25 * k, 0.75 * k}) {
      const ProblemParams p{2 * k + 1, k, gamma, 1.0};
      for (double l : {-1.0, 0.0, 1.0 * k, 2.0 * k - 0.5}) {
        const double formula = oscillation_threshold_formula(p, l);
        CriteriaOptions o;
        o.r_max = 1e3;
        const auto below = oscillation_condition(oscillating_power_triple(l, formula - 0.5, 1.0), p, o);
        const auto above = oscillation_condition(oscillating_power_triple(l, formula + 0.5, 1.0), p, o);
        ASSERT_TRUE(below.m_star);
        EXPECT_NEAR(*below.m_star, formula, 1e-12);
        EXPECT_EQ(below.status, ConditionStatus::violated);
        EXPECT_EQ(above.status, ConditionStatus::satisfied);
        EXPECT_TRUE(std::isinf(below.i_osc));
        EXPECT_TRUE(std::isfinite(above.i_osc));
        EXPECT_GE(above.i_osc, above.finite_part);
      }
    }
  }
}

TEST(OscillationCondition, FinitePartMatchesNestedOracle) {
  // b_* = 1 gives b~ = 1 + s^2 / 6 for (n, k, gamma) = (3, 1, 1/2).
  const ProblemParams p{3, 1, 0.5, 1.0};
  const auto triple = envelope_triple(RadialProfile::constant(1.0), RadialProfile::power_tail(0.0, 1.0, 6.0),
                                      6.0);
  CriteriaOptions o;
  o.r_max = 30.0;
  const auto report = oscillation_condition(triple, p, o);
  const double expected = oracle::nested_potential(
      3, 1, [](double s) { return std::pow(1.0 + s * s, -3.0) * (1.0 + s * s / 6.0); }, 30.0);
  EXPECT_NEAR(report.finite_part, expected, 1e-7 * expected);
}

TEST(OscillationCondition, RadialCoefficientHasZeroIntegral) {
  const auto r = oscillation_condition(radial_triple(RadialProfile::power_tail(1.0)), {5, 2, 1.0, 1.0});
  EXPECT_EQ(r.status, ConditionStatus::satisfied);
  EXPECT_EQ(r.i_osc, 0.0);
}

TEST(OscillationCondition, LowDimensionHasNoThreshold) {
  const ProblemParams p{4, 2, 1.0, 1.0};
  const auto r = oscillation_condition(oscillating_power_triple(1.0, 50.0, 1.0), p);
  EXPECT_FALSE(r.m_star);
  EXPECT_EQ(r.status, ConditionStatus::violated);
}

TEST(OscillationCondition, JsonUsesNullForInfinity) {
  const ProblemParams p{5, 2, 1.0, 1.0};
  const auto j = to_json(oscillation_condition(oscillating_power_triple(1.0, 4.5, 1.0), p));
  EXPECT_TRUE(j["i_osc"].is_null());
  EXPECT_EQ(j["status"], "violated");
  EXPECT_EQ(j["m_star"], 7.0);
}

TEST(JensenConditions, ImplicationsHold) {
  for (double l : {1.0, 3.0, 5.0}) {
    const ProblemParams p{5, 2, 1.0, 1.0};
    const auto triple = oscillating_power_triple(l, 9.0, 1.0);
    const auto report = jensen_conditions(triple.b_star, triple, p);
    for (const auto& imp : report.implications) EXPECT_TRUE(imp.consistent) << imp.from << " -> " << imp.to;
  }
}
