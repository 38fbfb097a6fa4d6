#include <gtest/gtest.h>

#include <cmath>

#include "hessianls/asymptotics.hpp"
#include "hessianls/cauchy.hpp"
#include "hessianls/errors.hpp"
#include "support/oracles.hpp"

using namespace hessianls;

TEST(ExactPowerSolution, KnownConstants) {
  const auto a = exact_power_solution({3, 1, 0.5, 1.0}, 0.0);
  EXPECT_DOUBLE_EQ(a.alpha, 4.0);
  EXPECT_NEAR(a.C, 1.0 / 400.0, 1e-17);
  const auto b = exact_power_solution({3, 2, 1.0, 1.0}, 1.0);
  EXPECT_DOUBLE_EQ(b.alpha, 3.0);
  EXPECT_NEAR(b.C, 1.0 / 45.0, 1e-16);
}

TEST(ExactPowerSolution, AgreesWithSubstitutionOracle) {
  for (int k = 1; k <= 5; ++k) {
    for (int n = std::max(3, k); n <= 2 * k + 2; ++n) {
      for (double gamma : {0.2 * k, 0.5 * k, 0.9 * k}) {
        for (double l = -1.0; l <= k - 1.0; l += 0.5) {
          const auto s = exact_power_solution({n, k, gamma, 1.0}, l);
          EXPECT_NEAR(s.C, oracle::power_amplitude(n, k, gamma, l), 1e-12 * s.C);
        }
      }
    }
  }
}

TEST(ExactPowerSolution, ResidualVanishes) {
  for (int k = 1; k <= 4; ++k) {
    const ProblemParams p{2 * k + 1, k, 0.5 * k, 1.0};
    for (double l : {-0.5, 0.0, k - 1.0}) {
      const auto s = exact_power_solution(p, l);
      for (int i = 0; i < 50; ++i) {
        const double r = std::pow(10.0, 4.0 * i / 49.0);
        EXPECT_LT(power_solution_residual(p, l, s, r), 1e-10);
      }
    }
  }
}

TEST(ExactPowerSolution, OutsideScopeIsRejected) {
  EXPECT_THROW(exact_power_solution({5, 2, 1.0, 1.0}, 1.5), InvalidArgument);
  EXPECT_THROW(exact_power_solution({5, 2, 2.0, 1.0}, 0.0), InvalidArgument);
}

TEST(VerifyRates, SyntheticExactCurve) {
  const ProblemParams p{5, 2, 1.0, 1.0};
  const auto s = exact_power_solution(p, 1.0);
  const auto grid = RadialGrid::hybrid(10.0, 1e5, 40);
  RadialCurve c{grid, {}, {}, {}, {}};
  for (double r : grid.nodes()) {
    c.u.push_back(s(r));
    c.du.push_back(s.derivative(r));
    c.d2u.push_back(s.second_derivative(r));
  }
  const auto report = verify_rates(c, p, 1.0);
  EXPECT_NEAR(report.u.exponent, 3.0, 1e-10);
  EXPECT_NEAR(report.du.exponent, 2.0, 1e-10);
  EXPECT_NEAR(report.d2u.exponent, 1.0, 1e-10);
  EXPECT_NEAR(report.amplitude_ratio, 1.0, 1e-12);
  EXPECT_FALSE(report.inconclusive);
  const auto j = to_json(report);
  EXPECT_EQ(j["alpha_expected"], 3.0);
  EXPECT_TRUE(j["fits"].contains("d2u"));
}

TEST(VerifyRates, SolverCurveCoherentRates) {
  const ProblemParams p{5, 2, 1.0, 1.0};
  const auto b = RadialProfile::power_tail(0.5);
  const auto curve = solve_cauchy(p, b, RadialGrid::hybrid(10.0, 1e5, 40));
  const auto report = verify_rates(curve, p, 0.5);
  EXPECT_NEAR(report.u.exponent, 3.5, 0.03 * 3.5);
  const double slack = 3.0 * (report.u.std_error + report.du.std_error) + 1e-3;
  EXPECT_NEAR(report.du.exponent, report.u.exponent - 1.0, slack);
  EXPECT_NEAR(report.d2u.exponent, report.du.exponent - 1.0, slack);
  EXPECT_GT(report.amplitude_min, 0.0);
  EXPECT_LT(report.amplitude_ratio, 10.0);
}

TEST(VerifyRates, NoisyWindowIsInconclusive) {
  // A log-periodic wobble of amplitude 1/2 leaves no clean slope in one decade.
  const auto grid = RadialGrid::hybrid(1.0, 1e4, 20);
  RadialCurve c{grid, {}, {}, {}, {}};
  for (double r : grid.nodes()) {
    const double wobble = std::exp(0.5 * std::sin(20.0 * std::log(r + 1.0)));
    c.u.push_back(r * r * r * wobble + 1.0);
    c.du.push_back(3 * r * r * wobble + 1.0);
    c.d2u.push_back(6 * r * wobble + 1.0);
  }
  const auto report = verify_rates(c, {5, 2, 1.0, 1.0}, 1.0, {1e3, 1e4});
  EXPECT_TRUE(report.inconclusive);
  EXPECT_GT(report.u.std_error, 0.05);
}
