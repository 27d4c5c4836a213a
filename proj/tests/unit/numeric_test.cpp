#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"
#include "rpst/random.hpp"

namespace {

TEST(CompensatedSum, RecoversSmallTermsNextToLargeOnes) {
  std::vector<double> values{1e16, 1.0, -1e16, 1.0};
  EXPECT_DOUBLE_EQ(rpst::compensated_sum(values), 2.0);
}

TEST(NormalCdf, KnownValues) {
  EXPECT_DOUBLE_EQ(rpst::normal_cdf(0.0), 0.5);
  EXPECT_NEAR(rpst::normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(rpst::normal_sf(8.0) / 6.220960574271785e-16, 1.0, 1e-12);
  EXPECT_NEAR(rpst::normal_two_sided_p(1.549193338482967), 0.12133525035848, 1e-10);
}

TEST(ScaledNormalSf, MatchesDirectFormAndAsymptoticBranch) {
  for (double x : {-3.0, 0.0, 1.0, 5.0, 20.0, 29.5}) {
    EXPECT_NEAR(rpst::scaled_normal_sf(x), std::exp(0.5 * x * x) * rpst::normal_sf(x),
                1e-12 * rpst::scaled_normal_sf(x));
  }
  // Continuity across the switch to the series.
  EXPECT_NEAR(rpst::scaled_normal_sf(29.999999) / rpst::scaled_normal_sf(30.0), 1.0, 1e-6);
  EXPECT_NEAR(rpst::scaled_normal_sf(1e3) * 1e3 * std::sqrt(2.0 * std::numbers::pi), 1.0, 1e-6);
}

TEST(ErfInv, AgreesWithBoost) {
  for (double y = -0.999; y < 1.0; y += 0.0371) {
    EXPECT_NEAR(rpst::erf_inv(y), boost::math::erf_inv(y), 1e-14 * (1.0 + std::abs(y)));
  }
  for (double tail : {1e-5, 1e-10, 1e-15}) {
    const double y = 1.0 - tail;
    EXPECT_NEAR(rpst::erf_inv(y) / boost::math::erf_inv(y), 1.0, 1e-10);
  }
}

TEST(ErfInv, RoundTripsAndEdges) {
  for (double x : {-2.5, -1.0, -0.1, 0.0, 0.3, 1.7, 2.2}) {
    EXPECT_NEAR(rpst::erf_inv(std::erf(x)), x, 1e-12 * (1.0 + std::abs(x)));
  }
  EXPECT_EQ(rpst::erf_inv(1.0), INFINITY);
  EXPECT_EQ(rpst::erf_inv(-1.0), -INFINITY);
  EXPECT_THROW(rpst::erf_inv(1.5), rpst::Error);
}

TEST(NormalLaplaceSf, ReducesToItsComponents) {
  EXPECT_NEAR(rpst::normal_laplace_sf(1.3, 2.0, 0.0), rpst::normal_sf(0.65), 1e-15);
  EXPECT_NEAR(rpst::normal_laplace_sf(1.3, 0.0, 2.0), 0.5 * std::exp(-0.65), 1e-15);
  EXPECT_DOUBLE_EQ(rpst::normal_laplace_sf(0.0, 1.0, 1.0), 0.5);
}

TEST(NormalLaplaceSf, SymmetricAndMonotone) {
  double previous = 1.0;
  for (double x = -10.0; x <= 10.0; x += 0.25) {
    const double sf = rpst::normal_laplace_sf(x, 1.5, 0.7);
    EXPECT_NEAR(sf + rpst::normal_laplace_sf(-x, 1.5, 0.7), 1.0, 1e-14);
    EXPECT_LE(sf, previous + 1e-15);
    previous = sf;
  }
}

TEST(NormalLaplaceSf, MatchesMonteCarlo) {
  rpst::RandomStream rng(11);
  const double sigma = 1.0;
  const double b = 2.0;
  const int reps = 400000;
  int above = 0;
  for (int i = 0; i < reps; ++i) {
    const double u = rng.uniform() - 0.5;
    const double lap = -b * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
    if (sigma * rng.normal() + lap > 3.0) ++above;
  }
  const double p = rpst::normal_laplace_sf(3.0, sigma, b);
  EXPECT_NEAR(static_cast<double>(above) / reps, p, 4.0 * std::sqrt(p * (1 - p) / reps));
}

TEST(NormalLaplaceSf, FarTailStaysPositiveAndFinite) {
  const double sf = rpst::normal_laplace_sf(400.0, 1.0, 5.0);
  EXPECT_GT(sf, 0.0);
  EXPECT_NEAR(std::log(sf), -80.0 + std::log(0.5) + 1.0 / 50.0, 1e-6);
}

}  // namespace
