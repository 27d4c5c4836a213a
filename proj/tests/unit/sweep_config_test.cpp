#include <gtest/gtest.h>

#include <string>

#include "rpst/error.hpp"
#include "rpst/sweep_config.hpp"

namespace {

TEST(SweepConfig, CartesianExpansion) {
  const auto cells = rpst::parse_sweep_config(R"(
# power grid
psi = [arctan, log1p, sqrt, identity, square]
q   = [0, 0.25, 0.5, 0.75]
n   = [100, 500, 1000]
eps = [0.5, 1, 5]   # budgets
theta = 2
reps = 10
)");
  EXPECT_EQ(cells.size(), 180U);
  // n varies slower than psi, psi slower than q, q slower than eps.
  EXPECT_EQ(cells[0].n, 100U);
  EXPECT_EQ(cells[0].psi.name(), "arctan");
  EXPECT_DOUBLE_EQ(cells[1].eps, 1.0);
  EXPECT_DOUBLE_EQ(cells[3].q, 0.25);
  EXPECT_EQ(cells[12].psi.name(), "log1p");
  EXPECT_EQ(cells[60].n, 500U);
  EXPECT_EQ(cells[0].n1, 50U);
  EXPECT_DOUBLE_EQ(cells[0].theta, 2.0);
}

TEST(SweepConfig, ScalarsStringsAndBalance) {
  const auto cells = rpst::parse_sweep_config(
      "test = rpst\nfamily = \"lomax\"\nlomax_shape = 3\nn = 200\nbalance = [0.1, 0.5]\n"
      "psi = \"power:3\"\nreference = normal\ncenter = true\n");
  ASSERT_EQ(cells.size(), 2U);
  EXPECT_EQ(cells[0].n1, 20U);
  EXPECT_EQ(cells[1].n1, 100U);
  EXPECT_EQ(cells[0].population.family, rpst::PopulationFamily::lomax);
  EXPECT_DOUBLE_EQ(cells[0].population.lomax_shape, 3.0);
  EXPECT_EQ(cells[0].psi.name(), "power:3");
  EXPECT_EQ(cells[0].reference, rpst::ReferenceDistribution::normal);
  EXPECT_TRUE(cells[0].center_groups);
}

TEST(SweepConfig, EmptyFileGivesDefaultCell) {
  EXPECT_EQ(rpst::parse_sweep_config("# nothing\n").size(), 1U);
}

TEST(SweepConfig, Errors) {
  EXPECT_THROW(rpst::parse_sweep_config("bogus = 1\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("n = 1\nn = 2\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("n = [1, 2\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("n = abc\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("q = 1.0\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("n1 = 10\nbalance = 0.5\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("n = 100\nn1 = 100\n"), rpst::Error);
  EXPECT_THROW(rpst::parse_sweep_config("just words\n"), rpst::Error);
  EXPECT_THROW(rpst::load_sweep_config("/nonexistent/sweep.toml"), rpst::Error);
  try {
    rpst::parse_sweep_config("n = 10\n\nfamliy = normal\n");
    FAIL();
  } catch (const rpst::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

}  // namespace
