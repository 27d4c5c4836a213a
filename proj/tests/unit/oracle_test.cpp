#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rpst/error.hpp"
#include "rpst/oracle.hpp"
#include "rpst/stats.hpp"
#include "rpst/validation.hpp"

namespace {

namespace oracle = rpst::oracle;
const rpst::TransformSpec kIdentity = rpst::TransformSpec::identity();

TEST(ExactU1Null, FourChooseTwo) {
  const auto d = oracle::exact_u1_null(4, 2, 0, kIdentity);
  EXPECT_EQ(d.support, (std::vector<double>{-2, -1, 0, 1, 2}));
  EXPECT_EQ(d.counts, (std::vector<std::uint64_t>{1, 1, 2, 1, 1}));
  EXPECT_EQ(d.outcomes, 6U);
  EXPECT_DOUBLE_EQ(d.probability(2), 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(d.mean(), 0.0);
  EXPECT_NEAR(d.variance(), 5.0 / 3.0, 1e-15);
}

TEST(ExactU1Null, AntisymmetricBetweenGroups) {
  const auto psi = rpst::TransformSpec::log1p();
  const auto a = oracle::exact_u1_null(9, 3, 2, psi);
  const auto b = oracle::exact_u1_null(9, 6, 2, psi);
  ASSERT_EQ(a.support.size(), b.support.size());
  const std::size_t k = a.support.size();
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_NEAR(a.support[i], -b.support[k - 1 - i], 1e-12);
    EXPECT_EQ(a.counts[i], b.counts[k - 1 - i]);
  }
}

TEST(ExactU1Null, Cap) {
  try {
    oracle::exact_u1_null(30, 15, 0, kIdentity);
    FAIL() << "expected TooLarge";
  } catch (const rpst::Error& e) {
    EXPECT_EQ(e.code(), rpst::ErrorCode::too_large);
  }
}

TEST(ExhaustiveU1Sensitivity, TwoPoints) {
  const double s = oracle::exhaustive_u1_sensitivity(1, 1, 0, kIdentity);
  EXPECT_LE(s, 2.5 + 1e-12);
  EXPECT_GT(s, 0.0);
}

TEST(ExhaustiveU1Sensitivity, GridAndSizeChecks) {
  const std::vector<double> incomplete{0.5, 1.5};
  EXPECT_THROW(oracle::exhaustive_u1_sensitivity(2, 1, 0, kIdentity, incomplete), rpst::Error);
  EXPECT_THROW(oracle::exhaustive_u1_sensitivity(5, 4, 0, kIdentity), rpst::Error);
}

TEST(ExhaustiveU1Sensitivity, OrderPreservingMoveIsFree) {
  const std::vector<double> g1{1.0, 4.0};
  const std::vector<double> g2{2.0, 3.0};
  const std::vector<double> moved{1.0, 4.7};
  const auto mod = rpst::ModificationSpec::from_count(0);
  EXPECT_DOUBLE_EQ(rpst::u1_statistic(rpst::rank_data(g1, g2, mod), kIdentity).centered,
                   rpst::u1_statistic(rpst::rank_data(moved, g2, mod), kIdentity).centered);
}

TEST(ExhaustiveU1Sensitivity, BoundHoldsAndIsAttained) {
  for (const auto& psi : rpst::TransformSpec::standard_family()) {
    for (std::size_t Q = 0; Q + 2 <= 7; ++Q) {
      const double observed = oracle::exhaustive_u1_sensitivity(3, 4, Q, psi);
      const double bound = rpst::sensitivity_bound(psi, 7, Q).gs_star;
      EXPECT_LE(observed, bound + 1e-12) << psi.name() << " Q=" << Q;
    }
  }
  const auto log1p = rpst::TransformSpec::log1p();
  EXPECT_NEAR(oracle::exhaustive_u1_sensitivity(3, 3, 1, log1p),
              rpst::sensitivity_bound(log1p, 6, 1).gs_star, 1e-12);
}

TEST(ExactW1Null, ThreeIdentity) {
  const auto d = oracle::exact_w1_null(3, 0, kIdentity);
  EXPECT_EQ(d.outcomes, 8U);
  EXPECT_DOUBLE_EQ(d.support.front(), -6.0);
  EXPECT_DOUBLE_EQ(d.support.back(), 6.0);
  EXPECT_EQ(d.counts.front(), 1U);
  EXPECT_EQ(d.counts.back(), 1U);
  EXPECT_DOUBLE_EQ(d.mean(), 0.0);
  EXPECT_DOUBLE_EQ(d.variance(), 14.0);
  EXPECT_THROW(oracle::exact_w1_null(17, 0, kIdentity), rpst::Error);
}

TEST(ExactW1Null, Symmetric) {
  const auto d = oracle::exact_w1_null(10, 3, rpst::TransformSpec::sqrt());
  const std::size_t k = d.support.size();
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_NEAR(d.support[i], -d.support[k - 1 - i], 1e-12);
    EXPECT_EQ(d.counts[i], d.counts[k - 1 - i]);
  }
}

TEST(ExhaustiveW1Sensitivity, MatchesBound) {
  for (std::size_t Q = 0; Q < 6; ++Q) {
    EXPECT_NEAR(oracle::exhaustive_w1_sensitivity(6, Q, rpst::TransformSpec::square()),
                rpst::w1_sensitivity(rpst::TransformSpec::square(), 6, Q), 1e-12);
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(oracle::binomial(10, 3), 120U);
  EXPECT_EQ(oracle::binomial(4, 5), 0U);
  EXPECT_EQ(oracle::binomial(200, 100), UINT64_MAX);
}

TEST(ValidationChecks, SmallSuitePasses) {
  const auto family = rpst::TransformSpec::standard_family();
  for (const auto& r : oracle::run_oracle_suite(6, family, 5)) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  }
  EXPECT_THROW(oracle::run_oracle_suite(17, family, 5), rpst::Error);
}

}  // namespace
