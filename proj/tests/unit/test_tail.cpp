#include <gtest/gtest.h>

#include "hessianls/tail.hpp"

using namespace hessianls;

TEST(PowerLogTail, Convergence) {
  EXPECT_TRUE(tail_integral_converges({-1.5, 0.0}));
  EXPECT_FALSE(tail_integral_converges({-1.0, 0.0}));
  EXPECT_TRUE(tail_integral_converges({-1.0, -2.0}));
  EXPECT_FALSE(tail_integral_converges({-1.0, -1.0}));
  EXPECT_FALSE(tail_integral_converges({-0.5, -5.0}));
}

TEST(PowerLogTail, Antiderivatives) {
  const auto a = integrate_tail({1.0, 0.0});
  ASSERT_TRUE(a);
  EXPECT_DOUBLE_EQ(a->power, 2.0);
  const auto b = integrate_tail({-1.0, 0.0});
  ASSERT_TRUE(b);
  EXPECT_DOUBLE_EQ(b->power, 0.0);
  EXPECT_DOUBLE_EQ(b->log_power, 1.0);
  const auto c = integrate_tail({-2.0, 0.0});
  ASSERT_TRUE(c);
  EXPECT_FALSE(c->grows());
  EXPECT_FALSE(integrate_tail({-1.0, -1.0}));
}

TEST(PowerLogTail, Algebra) {
  const PowerLogTail t{2.0, 1.0};
  EXPECT_DOUBLE_EQ(t.pow(0.5).power, 1.0);
  EXPECT_DOUBLE_EQ((t * PowerLogTail::monomial(-3.0)).power, -1.0);
  EXPECT_DOUBLE_EQ(one_plus_pow(t, 2.0).power, 4.0);
  EXPECT_DOUBLE_EQ(one_plus_pow(PowerLogTail::monomial(-1.0), 2.0).power, 0.0);
  EXPECT_TRUE(t.grows());
  EXPECT_FALSE(PowerLogTail::constant().grows());
}
