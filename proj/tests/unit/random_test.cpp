#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rpst/random.hpp"

namespace {

TEST(RandomStream, SameSeedSameSequence) {
  rpst::RandomStream a(42);
  rpst::RandomStream b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.uniform(), b.uniform());
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(RandomStream, DerivedStreamsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) firsts.insert(rpst::RandomStream::derive(7, i)());
  EXPECT_EQ(firsts.size(), 1000U);
  EXPECT_NE(rpst::mix_seed(1, 2), rpst::mix_seed(2, 1));
  EXPECT_NE(rpst::RandomStream::derive(7, 1, 2)(), rpst::RandomStream::derive(7, 2, 1)());
}

TEST(RandomStream, UniformStaysInsideOpenInterval) {
  rpst::RandomStream rng(3);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}

TEST(RandomStream, NormalMoments) {
  rpst::RandomStream rng(5);
  const int n = 200000;
  double sum = 0.0;
  double squares = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    squares += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(squares / n, 1.0, 0.015);
}

}  // namespace
