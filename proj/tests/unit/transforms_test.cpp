#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rpst/error.hpp"
#include "rpst/transforms.hpp"

namespace {

TEST(Transform, PointValues) {
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::identity()(7), 7.0);
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::log1p()(0), 0.0);
  EXPECT_NEAR(rpst::TransformSpec::arctan()(1), std::numbers::pi / 4, 1e-15);
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::square()(5), 25.0);
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::sqrt()(9), 3.0);
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::power(3.0)(2), 8.0);
}

TEST(Transform, Parse) {
  EXPECT_EQ(rpst::TransformSpec::parse("sqrt").name(), "sqrt");
  EXPECT_EQ(rpst::TransformSpec::parse("arctan").family(), rpst::TransformFamily::arctan);
  EXPECT_DOUBLE_EQ(rpst::TransformSpec::parse("power:1.5")(4), 8.0);
  EXPECT_THROW(rpst::TransformSpec::parse("cosh"), rpst::Error);
  EXPECT_THROW(rpst::TransformSpec::parse("power:-1"), rpst::Error);
  EXPECT_EQ(rpst::TransformSpec::standard_family().size(), 5U);
}

TEST(Transform, CustomTransformsAreChecked) {
  EXPECT_THROW(rpst::TransformSpec::custom("shifted", [](double r) { return r + 1.0; }),
               rpst::Error);
  EXPECT_THROW(rpst::TransformSpec::custom("flat", [](double r) { return r > 3 ? 3.0 : r; }),
               rpst::Error);
  const auto cube = rpst::TransformSpec::custom("cube", [](double r) { return r * r * r; });
  EXPECT_DOUBLE_EQ(cube(3), 27.0);
}

TEST(PsiBarQ, Examples) {
  const auto id = rpst::TransformSpec::identity();
  EXPECT_DOUBLE_EQ(rpst::psi_bar_q(id, 4, 0), 2.5);
  EXPECT_DOUBLE_EQ(rpst::psi_bar_q(id, 15, 3), 5.2);
  EXPECT_DOUBLE_EQ(rpst::psi_bar_q(rpst::TransformSpec::arctan(), 6, 6), 0.0);
}

TEST(PsiSums, Identity) {
  const auto sums = rpst::psi_sums(rpst::TransformSpec::identity(), 10);
  EXPECT_DOUBLE_EQ(sums.sum, 55.0);
  EXPECT_DOUBLE_EQ(sums.sum_squares, 385.0);
}

TEST(ConditionRatio, Examples) {
  const auto id = rpst::TransformSpec::identity();
  EXPECT_NEAR(rpst::condition_ratio(id, 3, 0, 4), 1.5, 1e-14);
  EXPECT_NEAR(rpst::condition_ratio(id, 2, 0, 4), 1.0, 1e-14);
}

TEST(ConditionRatio, ScaleInvariant) {
  const auto base = rpst::TransformSpec::log1p();
  const auto scaled =
      rpst::TransformSpec::custom("3log1p", [](double r) { return 3.0 * std::log1p(r); });
  for (int r : {3, 4, 6}) {
    EXPECT_NEAR(rpst::condition_ratio(base, 50, 10, r), rpst::condition_ratio(scaled, 50, 10, r),
                1e-10);
  }
}

TEST(ConditionRatio, Errors) {
  const auto id = rpst::TransformSpec::identity();
  EXPECT_THROW(rpst::condition_ratio(id, 3, 2, 4), rpst::Error);
  EXPECT_THROW(rpst::condition_ratio(id, 10, 0, 2), rpst::Error);
}

}  // namespace
