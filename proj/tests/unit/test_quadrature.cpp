#include <gtest/gtest.h>

#include <cmath>

#include "hessianls/errors.hpp"
#include "hessianls/profile.hpp"
#include "hessianls/quadrature.hpp"
#include "support/oracles.hpp"

using namespace hessianls;

TEST(Integrate, AgreesWithSimpson) {
  auto f = [](double r) { return r * r * std::pow(1.0 + r * r, -0.75); };
  EXPECT_NEAR(integrate(f, 0.0, 5.0), oracle::simpson(f, 0.0, 5.0, 20000), 1e-11);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 1.0, 2.0), std::exp(2.0) - std::exp(1.0),
              1e-13);
}

TEST(Integrate, ShortIntervalsStayCheap) {
  // Adaptive recursion must not be triggered by the interval length alone.
  long calls = 0;
  auto f = [&](double r) {
    ++calls;
    return r * r * std::pow(1.0 + r * r, -0.75);
  };
  for (double width : {1e-1, 1e-3, 4.3e-4, 1e-6, 1e-9}) {
    calls = 0;
    const double v = integrate(f, 1.0, 1.0 + width);
    EXPECT_NEAR(v, width * f(1.0 + 0.5 * width), 1e-3 * v);
    EXPECT_LE(calls, 15 * 7) << width;
  }
}

TEST(CumulativeIntegral, NodesAndInteriorPoints) {
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 20);
  const CumulativeIntegral F([](double r) { return 3.0 * r * r; }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(F.node_values()[i], std::pow(grid[i], 3), 1e-12 * std::max(1.0, std::pow(grid[i], 3)));
  }
  EXPECT_NEAR(F(12.345), std::pow(12.345, 3), 1e-9);
  EXPECT_NEAR(F(100.0 * (1 + 1e-13)), 1e6, 1e-6);
  EXPECT_THROW(F(100.1), OutOfRange);
}

TEST(KellerOssermanTransform, ConstantWeightClosedForm) {
  // n = 3, k = 1, g = 1: flux r/3, potential r^2/6.
  const auto grid = RadialGrid::hybrid(10.0, 1e3, 40);
  const KellerOssermanTransform t({3, 1}, [](double) { return 1.0; }, grid);
  for (double r : {0.05, 1.0, 7.5, 100.0, 1e3}) {
    EXPECT_NEAR(t.inner(r), r * r * r / 3.0, 1e-12 * r * r * r);
    EXPECT_NEAR(t.flux(r), r / 3.0, 1e-12 * r);
    EXPECT_NEAR(t.potential(r), r * r / 6.0, 1e-12 * r * r);
  }
}

TEST(KellerOssermanTransform, MatchesNestedSimpson) {
  for (int k = 1; k <= 3; ++k) {
    const int n = 2 * k + 1;
    const auto b = RadialProfile::power_tail(1.5);
    const auto grid = RadialGrid::hybrid(10.0, 50.0, 40);
    const KellerOssermanTransform t({n, k}, b.as_function(), grid);
    const double expected = oracle::nested_potential(n, k, [&](double r) { return b(r); }, 50.0, 40000);
    EXPECT_NEAR(t.potential(50.0), expected, 1e-8 * expected) << k;
  }
}

TEST(KellerOssermanTransform, HessianOrderEqualDimension) {
  // k = n = 3, g = 1: n r^{k-n} inner / C_n^k = r^3, so flux = r and
  // potential = r^2 / 2.
  const auto grid = RadialGrid::hybrid(10.0, 20.0, 40);
  const KellerOssermanTransform t({3, 3}, [](double) { return 1.0; }, grid);
  EXPECT_NEAR(t.flux(2.0), 2.0, 1e-12);
  EXPECT_NEAR(t.potential(20.0), 200.0, 1e-9);
}
