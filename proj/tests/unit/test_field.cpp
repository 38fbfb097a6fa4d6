#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hessianls/errors.hpp"
#include "hessianls/field.hpp"

using namespace hessianls;

TEST(AnisotropicField, KnownSolutionHasZeroResidual) {
  // Delta u = 4 + 2 + 2 = 8 and b u^{1/2} = 8 for u = 2x1^2 + x2^2 + x3^2 + 1.
  const auto f = anisotropic_quadratic_field();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const double x[3] = {dist(rng), dist(rng), dist(rng)};
    const double u = f.known_solution(x);
    EXPECT_DOUBLE_EQ(u, 2 * x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + 1);
    EXPECT_NEAR(f.value(x) * std::sqrt(u), 8.0, 8.0 * 1e-12);
  }
  EXPECT_EQ(builtin_field("anisotropic_quadratic")->name, f.name);
  EXPECT_FALSE(builtin_field("nope"));
}

TEST(SpherePoints, UnitNestedAndAxesFirst) {
  for (int dim : {2, 3, 5}) {
    const auto small = sphere_points(dim, 40);
    const auto large = sphere_points(dim, 80);
    for (std::size_t i = 0; i < small.size(); ++i) {
      double norm = 0.0;
      for (double c : small[i]) norm += c * c;
      EXPECT_NEAR(norm, 1.0, 1e-14);
      EXPECT_EQ(small[i], large[i]);
    }
    EXPECT_EQ(small[0][0], 1.0);
    EXPECT_EQ(small[1][0], -1.0);
  }
}

TEST(Radialize, RadialFieldHasNoOscillation) {
  NonRadialField f;
  f.dim = 3;
  f.value = [](std::span<const double> x) {
    return std::pow(1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2], -0.75);
  };
  const auto grid = RadialGrid::hybrid(10.0, 1e3, 20);
  const auto t = radialize(f, grid, 64);
  for (double r : grid.nodes()) {
    const double exact = std::pow(1.0 + r * r, -0.75);
    EXPECT_NEAR(t.b_star(r), exact, 1e-13 * exact);
    EXPECT_NEAR(t.b_upper(r), exact, 1e-13 * exact);
    EXPECT_EQ(t.b_osc(r), 0.0);
  }
}

TEST(Radialize, RefinementTightensEnvelopes) {
  const auto f = anisotropic_quadratic_field();
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 10);
  const auto coarse = radialize(f, grid, 32);
  const auto fine = radialize(f, grid, 256);
  for (double r : grid.nodes()) {
    EXPECT_LE(fine.b_star(r), coarse.b_star(r) * (1 + 1e-15));
    EXPECT_GE(fine.b_upper(r), coarse.b_upper(r) * (1 - 1e-15));
  }
  // Axes are always sampled, so the extrema along x1 and x2 are exact.
  for (double r : {1.0, 10.0, 100.0}) {
    EXPECT_NEAR(fine.b_star(r), 8.0 / std::sqrt(2 * r * r + 1), 1e-12);
    EXPECT_NEAR(fine.b_upper(r), 8.0 / std::sqrt(r * r + 1), 1e-12);
  }
}

TEST(Radialize, ValidatesInput) {
  const auto f = anisotropic_quadratic_field();
  const auto grid = RadialGrid::hybrid(10.0, 100.0, 10);
  EXPECT_THROW(radialize(f, grid, 16), InvalidArgument);
  NonRadialField neg = f;
  neg.value = [](std::span<const double> x) { return x[0]; };
  EXPECT_THROW(radialize(neg, grid, 32), InvalidCoefficient);
}

TEST(OscillatingPowerTriple, ClosedFormOscillation) {
  const auto t = oscillating_power_triple(1.0, 5.0, 2.0);
  for (double r : {0.0, 1.0, 10.0, 1e6}) {
    const double rho2 = 1.0 + r * r;
    EXPECT_NEAR(t.b_star(r), std::pow(rho2, -0.5), 1e-15 * std::pow(rho2, -0.5));
    EXPECT_NEAR(t.b_osc(r), 2.0 * std::pow(rho2, -2.5), 1e-15 * std::pow(rho2, -2.5));
    EXPECT_GE(t.b_upper(r), t.b_star(r));
  }
  ASSERT_TRUE(t.b_osc.tail());
  EXPECT_EQ(t.b_osc.tail()->exponent, 5.0);
  EXPECT_TRUE(radial_triple(RadialProfile::constant(1.0)).b_osc.identically_zero());
}
