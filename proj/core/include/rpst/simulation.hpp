#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpst/inference.hpp"
#include "rpst/random.hpp"
#include "rpst/ranks.hpp"
#include "rpst/transforms.hpp"

namespace rpst {

enum class PopulationFamily { normal, exponential, lomax, student_t };

struct Population {
  PopulationFamily family = PopulationFamily::normal;
  double lomax_shape = 2.5;
  double t_df = 5.0;

  static Population normal() { return {}; }
  static Population exponential() { return {PopulationFamily::exponential}; }
  static Population lomax(double shape = 2.5) { return {PopulationFamily::lomax, shape}; }
  static Population student_t(double df) { return {PopulationFamily::student_t, 2.5, df}; }

  // "normal", "exponential", "lomax(2.5)", "student_t(5)".
  std::string label() const;
  void validate() const;
};

std::string_view to_string(PopulationFamily family) noexcept;
PopulationFamily parse_family(std::string_view text);

// Inverse CDFs of the unit-scale families, written in terms of the upper
// tail 1 - u so that extreme draws keep their precision.
double exponential_quantile_upper(double tail);
double lomax_quantile_upper(double tail, double shape);

double sample_one(const Population& population, RandomStream& rng);

// location + scale * X for i.i.d. unit draws X.
std::vector<double> sample_population(const Population& population, double location,
                                      double scale, std::size_t size, RandomStream& rng);

// Pairs (x, y) with a Gaussian copula of correlation rho, both margins equal
// to `margin`, and `effect` added to y.
std::vector<Pair> gaussian_copula_pairs(std::size_t n, double rho, double effect,
                                        const Population& margin, RandomStream& rng);

enum class TestKind { rpst, rpsr, classic };

std::string_view to_string(TestKind kind) noexcept;
TestKind parse_test_kind(std::string_view text);

struct SimConfig {
  TestKind test = TestKind::rpst;
  Population population;
  double theta = 1.0;         // group-2 scale (rpst, classic) or paired shift (rpsr)
  std::size_t n = 100;
  std::size_t n1 = 50;        // ignored by rpsr
  double q = 0.0;
  TransformSpec psi = TransformSpec::arctan();
  double eps = 1.0;
  double split = PrivacyBudget::kDefaultSplit;
  double delta = 1e-6;
  double alpha = 0.05;
  std::size_t reps = 500;
  std::uint64_t seed = 0;
  double copula_rho = 0.5;
  ReferenceDistribution reference = ReferenceDistribution::normal_laplace;
  bool center_groups = false;

  void validate() const;
};

struct SimResult {
  double rejection_rate = 0.0;
  double mc_standard_error = 0.0;
  std::size_t rejections = 0;
  std::size_t reps = 0;
  double seconds = 0.0;
};

// One replication of the configured test on data from stream `rng`.
bool simulate_rejection(const SimConfig& config, RandomStream& rng);

// Replication i always uses RandomStream::derive(config.seed, i), so the
// result does not depend on `workers`.
SimResult estimate_size_power(const SimConfig& config, unsigned workers = 1);

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo estimate of (E sum_{group 1} psi(r_i) - (n1/n) sum psi(i)) / sigma
// under the configured two-sample alternative.
MonteCarloEstimate estimate_beta_n(const SimConfig& config, unsigned workers = 1);

struct SweepRow {
  SimConfig config;
  std::optional<SimResult> result;
  std::string error;
};

// Runs every cell with seed mix_seed(master_seed, cell index); a failing cell
// records its message and the sweep moves on.
std::vector<SweepRow> sweep(std::span<const SimConfig> grid, std::uint64_t master_seed,
                            unsigned workers = 1);

// Fixed header; `seconds` is written as NA unless include_timing is set.
inline constexpr std::string_view kSweepCsvHeader =
    "family,theta,n,n1,q,psi,eps,split,delta,alpha,reps,reject_rate,mc_se,seconds,test,rho";

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     bool include_timing = false);

}  // namespace rpst
