#include <cmath>

#include <gtest/gtest.h>

#include "kelly/errors.hpp"
#include "kelly/kellymath.hpp"

using namespace kelly;

TEST(GrowthRate, ZeroWithoutBet) {
    for (double p : {0.0, 0.3, 0.5, 1.0}) EXPECT_EQ(growth_rate(p, 0.0), 0.0);
}

TEST(GrowthRate, KellyFractionIsTheMaximum) {
    for (double p = 0.51; p < 0.99; p += 0.02) {
        const double best = growth_rate(p, kelly_allocation(p).theta);
        for (double theta = 0.0; theta < 0.999; theta += 0.001) EXPECT_LE(growth_rate(p, theta), best + 1e-15);
    }
}

TEST(KellyAllocation, NoBetFlag) {
    EXPECT_FALSE(kelly_allocation(0.75).no_bet);
    EXPECT_DOUBLE_EQ(kelly_allocation(0.75).theta, 0.5);
    EXPECT_TRUE(kelly_allocation(0.5).no_bet);
    EXPECT_TRUE(kelly_allocation(0.3).no_bet);
    EXPECT_DOUBLE_EQ(kelly_allocation(0.3).theta, -0.4);
}

TEST(GrowthStats, VarianceFormula) {
    const AllocationParams params{0.6, 50, 0.0, 0.2};
    const double L = std::log(1.2 / 0.8);
    const GrowthStats s = growth_stats(params);
    EXPECT_NEAR(s.variance, L * L * 0.6 * 0.4 / 50.0, 1e-16);
    EXPECT_NEAR(s.mean, growth_rate(0.6, 0.2), 1e-16);
    ASSERT_TRUE(s.sharpe.has_value());
    EXPECT_NEAR(*s.sharpe, s.mean / std::sqrt(s.variance), 1e-12);
}

TEST(GrowthStats, SharpeContinuousAtZeroAllocation) {
    for (double p : {0.2, 0.55, 0.9}) {
        const double limit = sharpe_ratio({p, 40, 0.0, 0.0});
        EXPECT_NEAR(limit, std::sqrt(40.0 / (p * (1 - p))) * (p - 0.5), 1e-12);
        EXPECT_NEAR(sharpe_ratio({p, 40, 0.0, 1e-6}), limit, 1e-5);
    }
}

TEST(GrowthStats, DegenerateProbabilityHasNoSharpe) {
    EXPECT_FALSE(growth_stats({1.0, 10, 0.0, 0.3}).sharpe.has_value());
    EXPECT_FALSE(growth_stats({0.0, 10, 0.0, 0.3}).sharpe.has_value());
    EXPECT_THROW((void)sharpe_ratio({1.0, 10, 0.0, 0.3}), DomainError);
}

TEST(Validate, RejectsBadParameters) {
    EXPECT_THROW(validate({1.2, 10, 0.0, 0.1}), DomainError);
    EXPECT_THROW(validate({0.6, 0, 0.0, 0.1}), DomainError);
    EXPECT_THROW(validate({0.6, 10, 0.0, 1.0}), DomainError);
    EXPECT_THROW(validate({0.6, 10, 0.0, -1.0}), DomainError);
    EXPECT_THROW(validate({0.6, 10, NAN, 0.1}), DomainError);
    EXPECT_NO_THROW(validate({0.6, 10, 0.0, 0.999}));
}

TEST(KellySharpe, ScaledValueNearCertainty) {
    EXPECT_NEAR(kelly_sharpe_scaled(0.975), 1.0075, 1e-4);
    EXPECT_NEAR(kelly_sharpe(0.975, 25), 5.0 * kelly_sharpe_scaled(0.975), 1e-12);
}

TEST(KellySharpe, CrossesOneJustBelowCertainty) {
    double lo = 0.9, hi = 0.999;
    ASSERT_LT(kelly_sharpe_scaled(lo), 1.0);
    ASSERT_GT(kelly_sharpe_scaled(hi), 1.0);
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (kelly_sharpe_scaled(mid) < 1.0 ? lo : hi) = mid;
    }
    EXPECT_GT(lo, 0.974);
    EXPECT_LT(hi, 0.976);
}

TEST(KellySharpe, IncreasingInP) {
    double prev = -1.0;
    for (double p = 0.505; p < 0.999; p += 0.001) {
        const double s = kelly_sharpe_scaled(p);
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(KellySharpe, DomainIsOpenUpperHalf) {
    EXPECT_THROW((void)kelly_sharpe_scaled(0.5), DomainError);
    EXPECT_THROW((void)kelly_sharpe_scaled(1.0), DomainError);
}

TEST(Stationarity, ResidualIsNonnegative) {
    EXPECT_EQ(sharpe_stationarity_residual(0.0), 0.0);
    for (double theta = 1e-4; theta < 1.0; theta += 1e-3) EXPECT_GT(sharpe_stationarity_residual(theta), 0.0);
}

TEST(Stationarity, NoInteriorRoot) {
    EXPECT_FALSE(find_stationarity_root(1e-6, 1.0 - 1e-6).has_value());
    EXPECT_FALSE(find_stationarity_root(0.1, 0.9, 50).has_value());
}
