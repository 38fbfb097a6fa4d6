#include <gtest/gtest.h>

#include <cmath>

#include "hessianls/asymptotics.hpp"
#include "hessianls/errors.hpp"
#include "hessianls/grid.hpp"
#include "hessianls/loglog_fit.hpp"

using namespace hessianls;

TEST(RadialGrid, HybridLayout) {
  const auto g = RadialGrid::hybrid(10.0, 1e4, 40);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[100], 10.0);
  EXPECT_DOUBLE_EQ(g.r_max(), 1e4);
  EXPECT_EQ(g.size(), 101u + 3u * 40u);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  // Log spacing beyond r_lin.
  EXPECT_NEAR(g[141] / g[140], std::pow(10.0, 1.0 / 40), 1e-12);
}

TEST(RadialGrid, ShortRangeIsLinearOnly) {
  const auto g = RadialGrid::hybrid(10.0, 0.5, 40, 50);
  EXPECT_EQ(g.size(), 51u);
  EXPECT_DOUBLE_EQ(g.r_max(), 0.5);
}

TEST(RadialGrid, SegmentAndWindow) {
  const auto g = RadialGrid::from_nodes({0.0, 1.0, 2.0, 4.0});
  EXPECT_EQ(g.segment(0.0), 0u);
  EXPECT_EQ(g.segment(1.5), 1u);
  EXPECT_EQ(g.segment(4.0), 2u);
  EXPECT_EQ(g.segment(9.0), 2u);
  EXPECT_EQ(g.window(1.0, 2.0), (std::vector<std::size_t>{1, 2}));
}

TEST(RadialGrid, RejectsBadNodes) {
  EXPECT_THROW(RadialGrid::from_nodes({0.0}), InvalidArgument);
  EXPECT_THROW(RadialGrid::from_nodes({1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(RadialGrid::from_nodes({0.0, 2.0, 2.0}), InvalidArgument);
  EXPECT_THROW(RadialGrid::hybrid(10.0, -1.0, 40), InvalidArgument);
}

namespace {
std::vector<double> sample(const RadialGrid& g, double (*f)(double)) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
  return v;
}
}  // namespace

TEST(FitExponent, ExactPower) {
  const auto g = RadialGrid::hybrid(10.0, 1e5, 40);
  const auto v = sample(g, [](double r) { return r * r * r; });
  for (const FitWindow w : {FitWindow{10.0, 1e3}, FitWindow::last_decades(1e5)}) {
    const auto fit = fit_exponent(g.nodes(), v, w);
    EXPECT_NEAR(fit.exponent, 3.0, 1e-12);
    EXPECT_LT(fit.std_error, 1e-12);
    EXPECT_GE(fit.count, 20u);
  }
}

TEST(FitExponent, DecayingPerturbation) {
  const auto g = RadialGrid::hybrid(10.0, 1e4, 40);
  const auto v = sample(g, [](double r) { return r * r * r * (1.0 + 1.0 / r); });
  const auto fit = fit_exponent(g.nodes(), v, {1e2, 1e4});
  EXPECT_NEAR(fit.exponent, 3.0, 0.01);
}

TEST(FitExponent, ConstantData) {
  const auto g = RadialGrid::hybrid(10.0, 1e4, 40);
  const auto v = sample(g, [](double) { return 2.5; });
  EXPECT_NEAR(fit_exponent(g.nodes(), v, {1e2, 1e4}).exponent, 0.0, 1e-14);
}

TEST(FitExponent, Errors) {
  const auto g = RadialGrid::hybrid(10.0, 1e4, 40);
  auto v = sample(g, [](double r) { return r; });
  EXPECT_THROW(fit_exponent(g.nodes(), v, {1e3, 1.1e3}), InvalidArgument);  // too few nodes
  v.back() = -1.0;
  EXPECT_THROW(fit_exponent(g.nodes(), v, {1e2, 1e4}), InvalidArgument);
}
