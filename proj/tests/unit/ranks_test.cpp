#include <gtest/gtest.h>

#include <vector>

#include "rpst/error.hpp"
#include "rpst/random.hpp"
#include "rpst/ranks.hpp"

namespace {

using Ranks = std::vector<std::size_t>;

TEST(CenterOutwardRanks, FifteenWithThreeZeroed) {
  EXPECT_EQ(rpst::center_outward_rank_values(15, 3),
            (Ranks{12, 10, 8, 6, 4, 2, 0, 0, 0, 1, 3, 5, 7, 9, 11}));
}

TEST(CenterOutwardRanks, SmallCases) {
  EXPECT_EQ(rpst::center_outward_rank_values(5, 0), (Ranks{5, 3, 1, 2, 4}));
  EXPECT_EQ(rpst::center_outward_rank_values(4, 4), (Ranks{0, 0, 0, 0}));
  EXPECT_EQ(rpst::center_outward_rank_values(1, 0), (Ranks{1}));
  EXPECT_TRUE(rpst::center_outward_rank_values(0, 0).empty());
}

TEST(CenterOutwardRanks, PairedAlternation) {
  // lowest, two highest, two next lowest, ...
  EXPECT_EQ(rpst::extreme_inward_order(6, rpst::Alternation::paired),
            (Ranks{0, 5, 4, 1, 2, 3}));
  EXPECT_EQ(rpst::extreme_inward_order(6, rpst::Alternation::single),
            (Ranks{0, 5, 1, 4, 2, 3}));
}

TEST(CenterOutwardRanks, IsAPermutationWithZerosInTheMiddle) {
  for (std::size_t n = 1; n <= 40; ++n) {
    for (std::size_t Q = 0; Q <= n; ++Q) {
      Ranks r = rpst::center_outward_rank_values(n, Q);
      std::vector<int> seen(n + 1, 0);
      for (std::size_t v : r) ++seen[v];
      EXPECT_EQ(seen[0], static_cast<int>(Q));
      for (std::size_t v = 1; v + Q <= n; ++v) EXPECT_EQ(seen[v], 1);
    }
  }
}

TEST(ModificationSpec, Validation) {
  EXPECT_EQ(rpst::ModificationSpec::from_proportion(0.2).count(15), 3U);
  EXPECT_EQ(rpst::ModificationSpec::from_proportion(0.75).count(101), 75U);
  EXPECT_EQ(rpst::ModificationSpec::from_count(4).count(4), 4U);
  EXPECT_THROW(rpst::ModificationSpec::from_count(5).count(4), rpst::Error);
  EXPECT_THROW(rpst::ModificationSpec::from_proportion(1.0), rpst::Error);
  EXPECT_THROW(rpst::ModificationSpec::from_proportion(-0.1), rpst::Error);
}

TEST(RankData, AssignsRanksByGroup) {
  const std::vector<double> g1{-2.0, 2.0};
  const std::vector<double> g2{-0.1, 0.1};
  const auto s = rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0));
  EXPECT_EQ(s.ranks, (Ranks{4, 3, 2, 1}));
  EXPECT_EQ(s.n1, 2U);
  EXPECT_EQ(s.n2, 2U);
  EXPECT_EQ(s.in_group1, (std::vector<std::uint8_t>{1, 1, 0, 0}));
}

TEST(RankData, TwoPoints) {
  const std::vector<double> g1{5.0};
  const std::vector<double> g2{1.0};
  const auto s = rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0));
  EXPECT_EQ(s.ranks, (Ranks{1, 2}));
}

TEST(RankData, TiesNeedJitter) {
  const std::vector<double> g1{0.0, 0.0};
  const std::vector<double> g2{1.0};
  try {
    rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0));
    FAIL() << "expected an error";
  } catch (const rpst::Error& e) {
    EXPECT_EQ(e.code(), rpst::ErrorCode::ties_without_jitter);
  }

  rpst::RandomStream rng(1);
  rpst::RankOptions options;
  options.jitter_scale = 0.1;
  options.jitter_stream = &rng;
  const auto s = rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0), options);
  EXPECT_EQ(s.ranks[2], 2U);  // the 1.0 stays the maximum

  options.jitter_scale = 0.5;
  try {
    rpst::rank_data(g1, g2, rpst::ModificationSpec::from_count(0), options);
    FAIL() << "expected an error";
  } catch (const rpst::Error& e) {
    EXPECT_EQ(e.code(), rpst::ErrorCode::jitter_too_large);
  }
}

TEST(RankData, RejectsEmptyGroupsAndNonFinite) {
  const std::vector<double> empty;
  const std::vector<double> one{1.0};
  const std::vector<double> bad{NAN};
  EXPECT_THROW(rpst::rank_data(empty, one, rpst::ModificationSpec::from_count(0)), rpst::Error);
  EXPECT_THROW(rpst::rank_data(bad, one, rpst::ModificationSpec::from_count(0)), rpst::Error);
}

TEST(SignedRankData, SignsAndModifiedRanks) {
  const std::vector<rpst::Pair> pairs{{0.0, 0.5}, {1.2, 0.0}, {0.0, 2.0}};
  auto s = rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(0));
  EXPECT_EQ(s.signs, (std::vector<int>{1, -1, 1}));
  EXPECT_EQ(s.ranks, (Ranks{1, 2, 3}));
  EXPECT_EQ(s.modified_ranks, (Ranks{1, 2, 3}));

  s = rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(1));
  EXPECT_EQ(s.modified_ranks, (Ranks{0, 1, 2}));

  s = rpst::signed_rank_data(pairs, rpst::ModificationSpec::from_count(3));
  EXPECT_EQ(s.modified_ranks, (Ranks{0, 0, 0}));
}

TEST(SignedRankData, ZeroAndTiedDifferences) {
  const std::vector<rpst::Pair> zero{{1.0, 1.0}, {0.0, 2.0}};
  try {
    rpst::signed_rank_data(zero, rpst::ModificationSpec::from_count(0));
    FAIL() << "expected an error";
  } catch (const rpst::Error& e) {
    EXPECT_EQ(e.code(), rpst::ErrorCode::zero_difference);
  }
  const std::vector<rpst::Pair> tied{{0.0, 1.0}, {0.0, -1.0}};
  try {
    rpst::signed_rank_data(tied, rpst::ModificationSpec::from_count(0));
    FAIL() << "expected an error";
  } catch (const rpst::Error& e) {
    EXPECT_EQ(e.code(), rpst::ErrorCode::ties_without_jitter);
  }
}

}  // namespace
