#include "lcs/bessel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

namespace {

TEST(BesselTable, ZeroArgumentIsKroneckerDelta) {
  const auto t = lcs::bessel_table(0.0, 5);
  ASSERT_EQ(t.order_max(), 5);
  EXPECT_EQ(t[0], 1.0);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(t[n], 0.0);
}

TEST(BesselTable, OrderZeroMatchesPowerSeries) {
  const auto t = lcs::bessel_table(2.0, 0);
  ASSERT_EQ(t.values.size(), 1u);
  EXPECT_NEAR(t[0], oracle::bessel_j_series(0, 2.0), 1e-12);
  EXPECT_NEAR(t[0], 0.22389077914123567, 1e-15);
}

TEST(BesselTable, HighOrderMatchesPowerSeries) {
  const auto t = lcs::bessel_table(20.0, 40);
  EXPECT_NEAR(t[40], oracle::bessel_j_series(40, 20.0), 1e-13);
}

TEST(BesselTable, MatchesPowerSeriesOnSmallOrdersAndArguments) {
  for (double y = 0.05; y <= 10.0; y += 0.35) {
    const auto t = lcs::bessel_table(y, 30);
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(t[n], oracle::bessel_j_series(n, y), 1e-12) << "n=" << n << " y=" << y;
  }
}

TEST(BesselTable, TinyArgument) {
  const auto t = lcs::bessel_table(1e-40, 3);
  EXPECT_EQ(t[0], 1.0);
  EXPECT_DOUBLE_EQ(t[1], 0.5e-40);
  const auto u = lcs::bessel_table(1e-8, 3);
  EXPECT_NEAR(u[1], oracle::bessel_j_series(1, 1e-8), 1e-24);
}

TEST(BesselTable, RejectsBadArguments) {
  EXPECT_THROW(lcs::bessel_table(-1.0, 3), lcs::domain_error);
  EXPECT_THROW(lcs::bessel_table(std::numeric_limits<double>::infinity(), 3), lcs::domain_error);
  EXPECT_THROW(lcs::bessel_table(std::nan(""), 3), lcs::domain_error);
  EXPECT_THROW(lcs::bessel_table(1.0, -1), lcs::domain_error);
}

TEST(BesselTable, PropertiesOverRandomArguments) {
  for (int c = 0; c < 250; ++c) {
    const double y = oracle::uniform(1e-3, 50.0);
    const int order = static_cast<int>(std::ceil(y)) + 60;
    const auto t = lcs::bessel_table(y, order);

    double neumann = t[0];
    for (int k = 2; k <= order; k += 2) neumann += 2.0 * t[k];
    EXPECT_NEAR(neumann, 1.0, 1e-12) << "y=" << y;

    for (int n = 1; n < order; ++n) {
      const double residual = t[n - 1] + t[n + 1] - (2.0 * n / y) * t[n];
      EXPECT_LE(std::abs(residual), 1e-10 * std::max(1.0, std::abs(t[n]))) << "n=" << n << " y=" << y;
    }
    for (double v : t.values) EXPECT_LE(std::abs(v), 1.0);
  }
}

TEST(WeightedSumIdentity, SmallArgumentLimit) { EXPECT_LE(lcs::weighted_sum_identity_gap(1e-8), 1e-16); }

TEST(WeightedSumIdentity, ModerateAndLargeArguments) {
  EXPECT_LE(lcs::weighted_sum_identity_gap(2.0), 1e-12);
  EXPECT_LE(lcs::weighted_sum_identity_gap(40.0), 1e-10);
}

TEST(WeightedSumIdentity, DirectSeriesAgreesWithOracle) {
  // Independent route: sum n J_n^2 from the power-series oracle.
  for (double y : {0.5, 2.0, 7.5}) {
    const long double oracle_sum = oracle::bessel_square_tail(0, y, [](int n) { return n + 1.0L; });
    EXPECT_NEAR(lcs::detail::weighted_bessel_square_sum(y), static_cast<double>(oracle_sum), 1e-12) << y;
  }
}

TEST(WeightedSumIdentity, HoldsOverRandomArguments) {
  for (int c = 0; c < 200; ++c) {
    const double y = oracle::uniform(1e-3, 50.0);
    EXPECT_LE(lcs::weighted_sum_identity_gap(y), 1e-10) << "y=" << y;
  }
}

TEST(WeightedSumIdentity, RejectsNonPositive) {
  EXPECT_THROW(lcs::weighted_sum_identity_gap(0.0), lcs::domain_error);
  EXPECT_THROW(lcs::weighted_sum_identity_gap(-2.0), lcs::domain_error);
}

}  // namespace
