#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hessianls/cauchy.hpp"
#include "hessianls/spectrum.hpp"
#include "support/oracles.hpp"

using namespace hessianls;

namespace {

double interpolate_reference(const std::vector<oracle::Sample>& ref, double r) {
  for (std::size_t i = 1; i < ref.size(); ++i) {
    if (ref[i].r >= r) {
      // Cubic Hermite between the bracketing samples.
      const auto& a = ref[i - 1];
      const auto& b = ref[i];
      const double h = b.r - a.r, t = (r - a.r) / h;
      const double t2 = t * t, t3 = t2 * t;
      return (2 * t3 - 3 * t2 + 1) * a.u + (t3 - 2 * t2 + t) * h * a.du + (-2 * t3 + 3 * t2) * b.u +
             (t3 - t2) * h * b.du;
    }
  }
  return ref.back().u;
}

}  // namespace

TEST(SolveCauchy, AgreesWithIndependentRk4) {
  const struct {
    ProblemParams p;
    RadialProfile b;
  } cases[] = {{{3, 1, 0.5, 1.0}, RadialProfile::constant(1.0)},
               {{4, 2, 1.0, 1.0}, RadialProfile::power_tail(1.0)},
               {{5, 3, 2.0, 0.7}, RadialProfile::power_tail(2.0, 1.0, 4.0)},
               {{3, 3, 1.0, 2.0}, RadialProfile::power_tail(0.5)}};
  for (const auto& c : cases) {
    const auto grid = RadialGrid::hybrid(10.0, 20.0, 40);
    const auto curve = solve_cauchy(c.p, c.b, grid);
    const auto ref = oracle::rk4_radial(c.p.n, c.p.k, c.p.gamma, c.p.a, [&](double r) { return c.b(r); },
                                        20.0, 200000);
    for (std::size_t i = 0; i < grid.size(); i += 7) {
      if (grid[i] < 1e-3) continue;
      const double expected = interpolate_reference(ref, grid[i]);
      EXPECT_NEAR(curve.u[i], expected, 1e-6 * expected) << "k=" << c.p.k << " r=" << grid[i];
    }
  }
}

TEST(SolveCauchy, ResidualAndGammaK) {
  for (int k = 1; k <= 4; ++k) {
    const ProblemParams p{2 * k + 1, k, 0.6 * k, 1.0};
    const auto b = RadialProfile::power_tail(0.5 * k);
    const auto grid = RadialGrid::hybrid(10.0, 1e4, 40);
    const auto curve = solve_cauchy(p, b, grid);
    const auto res = sigma_k_residual(curve, p.n, p.k, cauchy_rhs(p, b, curve));
    for (double x : res) EXPECT_LT(x, 1e-6);
    for (bool in : gamma_k_membership(curve, p)) EXPECT_TRUE(in);
  }
}

TEST(SolveCauchy, MomentMatchesQuadrature) {
  const ProblemParams p{4, 2, 1.0, 1.0};
  const auto b = RadialProfile::power_tail(1.0);
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 800, 2000);
  const auto curve = solve_cauchy(p, b, grid);
  // M(r) = int_0^r s^{n-1} b u^gamma, with u from the solver's own nodes.
  for (std::size_t i = 500; i < grid.size(); i += 137) {
    double m = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      auto f = [&](std::size_t q) { return std::pow(grid[q], 3) * b(grid[q]) * curve.u[q]; };
      m += 0.5 * (grid[j] - grid[j - 1]) * (f(j) + f(j - 1));
    }
    EXPECT_NEAR(curve.moment[i], m, 2e-3 * m) << grid[i];
  }
}

TEST(SolveCauchy, ComparisonPrinciple) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 1 + trial % 3;
    ProblemParams p1{2 * k + 1 + trial % 2, k, k * (0.1 + 0.8 * unit(rng)), 0.2 + unit(rng)};
    ProblemParams p2 = p1;
    p2.a += 0.5 * unit(rng);
    const double l = 3.0 * unit(rng);
    const auto b1 = RadialProfile::power_tail(l);
    const auto b2 = RadialProfile::power_tail(l, unit(rng), l + unit(rng));
    const auto grid = RadialGrid::hybrid(10.0, 1e3, 20);
    const auto u1 = solve_cauchy(p1, b1, grid);
    const auto u2 = solve_cauchy(p2, b2, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_GE(u2.u[i], u1.u[i] * (1 - 1e-9));
  }
}

TEST(SolveCauchy, ScaleInvarianceForConstantCoefficient) {
  // u_a(r) = a U(lambda r) with lambda = a^{(gamma - k) / (2k)}.
  const ProblemParams base{5, 2, 1.0, 1.0};
  const auto b = RadialProfile::constant(1.0);
  const double a = 9.0;
  const double lambda = std::pow(a, (base.gamma - base.k) / (2.0 * base.k));
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 40);
  std::vector<double> scaled(grid.nodes().begin(), grid.nodes().end());
  for (double& r : scaled) r *= lambda;
  const auto reference = solve_cauchy(base, b, RadialGrid::from_nodes(scaled));
  ProblemParams shifted = base;
  shifted.a = a;
  const auto curve = solve_cauchy(shifted, b, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(curve.u[i], a * reference.u[i], 1e-7 * curve.u[i]);
  }
}

TEST(SolveCauchy, OverflowGuardRaisesFiniteBlowUp) {
  const ProblemParams p{3, 1, 0.5, 1.0};
  SolverOptions o;
  o.overflow_guard = 50.0;
  EXPECT_THROW(solve_cauchy(p, RadialProfile::constant(1.0), RadialGrid::hybrid(10.0, 100.0, 10), o),
               FiniteBlowUp);
}

TEST(SolveCauchy, RejectsInvalidParameters) {
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 10);
  EXPECT_THROW(solve_cauchy({3, 1, 1.0, 1.0}, RadialProfile::constant(1.0), grid), InvalidArgument);
  EXPECT_THROW(solve_cauchy({3, 1, 0.5, 0.0}, RadialProfile::constant(1.0), grid), InvalidArgument);
}

TEST(SolveLinearRhs, ClosedFormAndDerivatives) {
  const auto grid = RadialGrid::hybrid(10.0, 1e3, 40);
  const auto v = solve_linear_rhs({3, 1}, RadialProfile::constant(1.0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    EXPECT_NEAR(v.u[i], r * r / 6.0, 1e-12 * std::max(1.0, r * r));
    EXPECT_NEAR(v.du[i], r / 3.0, 1e-12 * std::max(1.0, r));
    EXPECT_NEAR(v.d2u[i], 1.0 / 3.0, 1e-10);
  }
}

TEST(CurveCsv, RoundTripKeepsSeventeenDigits) {
  const ProblemParams p{3, 1, 0.5, 1.0};
  const auto b = RadialProfile::constant(1.0);
  const auto curve = solve_cauchy(p, b, RadialGrid::hybrid(10.0, 100.0, 10));
  std::stringstream s;
  write_curve_csv(s, curve, sigma_k_residual(curve, 3, 1, cauchy_rhs(p, b, curve)));
  std::string header;
  std::getline(s, header);
  EXPECT_EQ(header, "r,u,du,d2u,sigma_k_residual");
  s.seekg(0);
  const auto back = read_curve_csv(s);
  ASSERT_EQ(back.size(), curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(back.u[i], curve.u[i]);
    EXPECT_EQ(back.r(i), curve.r(i));
    EXPECT_EQ(back.d2u[i], curve.d2u[i]);
  }
}
