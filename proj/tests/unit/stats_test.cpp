#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rpst/error.hpp"
#include "rpst/oracle.hpp"
#include "rpst/random.hpp"
#include "rpst/stats.hpp"

namespace {

const rpst::TransformSpec kIdentity = rpst::TransformSpec::identity();

rpst::RankedSample example_sample() {
  static const std::vector<double> g1{-2.0, 2.0};
  static const std::vector<double> g2{-0.1, 0.1};
  return rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0));
}

TEST(U1Statistic, Example) {
  const auto value = rpst::u1_statistic(example_sample(), kIdentity);
  EXPECT_DOUBLE_EQ(value.raw_sum, 7.0);
  EXPECT_DOUBLE_EQ(value.expectation, 5.0);
  EXPECT_DOUBLE_EQ(value.centered, 2.0);
}

TEST(U1Statistic, SwappingGroupsNegates) {
  const std::vector<double> g1{-2.0, 2.0};
  const std::vector<double> g2{-0.1, 0.1};
  const auto swapped = rpst::rank_data(g2, g1, rpst::ModificationSpec::from_count(0));
  EXPECT_DOUBLE_EQ(rpst::u1_statistic(swapped, kIdentity).centered, -2.0);
}

TEST(U1Statistic, WholeSampleInGroupOneIsZero) {
  rpst::RankedSample s = example_sample();
  std::fill(s.in_group1.begin(), s.in_group1.end(), 1);
  s.n1 = 4;
  s.n2 = 0;
  EXPECT_NEAR(rpst::u1_statistic(s, rpst::TransformSpec::arctan()).centered, 0.0, 1e-15);
}

TEST(NullVariance, Examples) {
  EXPECT_NEAR(rpst::null_variance(2, 2, kIdentity, 0), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(rpst::null_variance(1, 3, kIdentity, 0), 1.25, 1e-15);
  EXPECT_DOUBLE_EQ(rpst::null_variance(3, 4, rpst::TransformSpec::square(), 7), 0.0);
}

TEST(NullVariance, SymmetricInGroupSizes) {
  for (double n1 = 1; n1 < 20; n1 += 1) {
    EXPECT_NEAR(rpst::null_variance(n1, 20 - n1, rpst::TransformSpec::log1p(), 4),
                rpst::null_variance(20 - n1, n1, rpst::TransformSpec::log1p(), 4), 1e-10);
  }
}

TEST(NullVariance, LargestForBalancedGroups) {
  const auto psi = rpst::TransformSpec::arctan();
  double previous = 0.0;
  for (double n1 = 1; n1 <= 50; n1 += 0.5) {
    const double v = rpst::null_variance(n1, 100 - n1, psi, 25);
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(SensitivityBound, Examples) {
  EXPECT_DOUBLE_EQ(rpst::sensitivity_bound(kIdentity, 4, 0).gs_star, 4.5);
  EXPECT_NEAR(rpst::sensitivity_bound(kIdentity, 15, 3).gs_star, 17.8, 1e-12);
  EXPECT_DOUBLE_EQ(rpst::sensitivity_bound(kIdentity, 2, 0).gs_star, 2.0);
  // psi(n-Q-1) <= psi-bar: first branch dominates.
  const auto flat = rpst::TransformSpec::custom(
      "step", [](double r) { return r <= 9 ? r * 1e-3 : 1.0 + r; });
  EXPECT_DOUBLE_EQ(rpst::sensitivity_bound(flat, 10, 0).gs_star, 11.0);
  EXPECT_THROW(rpst::sensitivity_bound(kIdentity, 4, 3), rpst::Error);
}

TEST(W1, StatisticAndSensitivity) {
  const std::vector<rpst::Pair> pairs{{0.0, 0.5}, {1.2, 0.0}, {0.0, 2.0}};
  EXPECT_DOUBLE_EQ(
      rpst::w1_statistic(rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(0)),
                         kIdentity),
      2.0);
  EXPECT_DOUBLE_EQ(
      rpst::w1_statistic(rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(1)),
                         kIdentity),
      1.0);
  EXPECT_DOUBLE_EQ(
      rpst::w1_statistic(rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(3)),
                         kIdentity),
      0.0);
  EXPECT_DOUBLE_EQ(rpst::w1_sensitivity(kIdentity, 10, 0), 20.0);
  EXPECT_DOUBLE_EQ(rpst::w1_sensitivity(kIdentity, 10, 4), 12.0);
  EXPECT_DOUBLE_EQ(rpst::w1_sensitivity(rpst::TransformSpec::square(), 5, 1), 32.0);
  EXPECT_DOUBLE_EQ(rpst::w1_null_variance(kIdentity, 3, 0), 14.0);
  EXPECT_DOUBLE_EQ(rpst::w1_null_variance(kIdentity, 3, 3), 0.0);
  EXPECT_NEAR(rpst::w1_null_variance(rpst::TransformSpec::sqrt(), 4, 0), 10.0, 1e-14);
}

TEST(Srswor, Examples) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto m = rpst::srswor_moments(v, 2);
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_NEAR(m.variance, 5.0 / 3.0, 1e-13);
  const auto whole = rpst::srswor_moments(v, 4);
  EXPECT_DOUBLE_EQ(whole.mean, 10.0);
  EXPECT_NEAR(whole.variance, 0.0, 1e-14);
}

TEST(Srswor, MatchesEnumeration) {
  rpst::RandomStream rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(9);
    for (double& x : v) x = 10.0 * rng.uniform();
    for (std::size_t k = 0; k <= v.size(); ++k) {
      const auto exact = rpst::oracle::exact_subset_sum_null(v, k);
      const auto m = rpst::srswor_moments(v, k);
      EXPECT_NEAR(m.mean, exact.mean(), 1e-9 * (1 + std::abs(m.mean)));
      EXPECT_NEAR(m.variance, exact.variance(), 1e-9 * (1 + m.variance));
    }
  }
}

TEST(PiN, Examples) {
  EXPECT_NEAR(rpst::pi_n_diagnostic(kIdentity, 2, 2, 0, 1.0), 4.5 / std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_NEAR(rpst::pi_n_diagnostic(kIdentity, 2, 2, 0, 4.5 / std::sqrt(5.0 / 3.0)), 1.0, 1e-12);
}

}  // namespace
