#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpst/privacy.hpp"
#include "rpst/ranks.hpp"
#include "rpst/transforms.hpp"

namespace rpst {

// Null reference used to turn the privatised statistic into a p-value.
//   normal_laplace: exact law of N(0, sigma~^2) + Laplace(0, noise_scale),
//                   i.e. the asymptotic null of the rank statistic together
//                   with the injected noise.
//   normal:         N(0, sigma~^2) only (noise ignored); valid as eps grows.
enum class ReferenceDistribution { normal_laplace, normal };

std::string_view to_string(ReferenceDistribution reference) noexcept;
ReferenceDistribution parse_reference(std::string_view text);

// Two-sided p-value of |statistic| under the chosen reference.
double reference_p_value(double statistic, double sigma, double noise_scale,
                         ReferenceDistribution reference);

struct PrivateTestResult {
  std::string test;            // "rpst" or "rpsr"
  double statistic = 0.0;      // privatised U1 or W1
  double noise_scale = 0.0;    // Laplace scale added to the statistic
  double sigma = 0.0;          // conservative null standard deviation
  double z_score = 0.0;        // |statistic| / sigma
  double p_value = 1.0;
  ReferenceDistribution reference = ReferenceDistribution::normal_laplace;
  std::optional<GroupSizeEstimate> group_estimate;  // rpst only
  double eps_u = 0.0;
  double eps_d = 0.0;
  double delta = 0.0;
  std::string psi;
  std::optional<double> q;
  std::size_t Q = 0;
  std::size_t n = 0;

  double epsilon_total() const noexcept { return eps_u + eps_d; }
};

struct RpstOptions {
  RankOptions ranking;
  ReferenceDistribution reference = ReferenceDistribution::normal_laplace;
  // Subtract each group's (non-private) median before ranking. Location
  // alignment for simulations; it spends no privacy budget and offers none.
  bool center_groups = false;
};

// Private rank-transformed, percentile-modified Siegel-Tukey scale test.
// Draw order from `noise`: statistic noise first, then group-size noise.
PrivateTestResult rpst_test(std::span<const double> group1, std::span<const double> group2,
                            const TransformSpec& psi, const ModificationSpec& mod,
                            const PrivacyBudget& budget, NoiseSource& noise,
                            const RpstOptions& options = {});
PrivateTestResult rpst_test(std::span<const double> group1, std::span<const double> group2,
                            const TransformSpec& psi, const ModificationSpec& mod,
                            const PrivacyBudget& budget, RandomStream& rng,
                            const RpstOptions& options = {});

struct RpsrOptions {
  RankOptions ranking;
  ReferenceDistribution reference = ReferenceDistribution::normal_laplace;
};

// Private rank-transformed, percentile-modified signed-rank test. The whole
// budget eps_u goes to the statistic; no group sizes need estimating.
PrivateTestResult rpsr_test(std::span<const Pair> pairs, const TransformSpec& psi,
                            const ModificationSpec& mod, double eps_u, NoiseSource& noise,
                            const RpsrOptions& options = {});
PrivateTestResult rpsr_test(std::span<const Pair> pairs, const TransformSpec& psi,
                            const ModificationSpec& mod, double eps_u, RandomStream& rng,
                            const RpsrOptions& options = {});

// Lower end of the alpha window 1 - erf(sqrt(3/2 (n-1))) < alpha < 0.5 in
// which the half-normal critical value is increasing in the smaller group.
double classic_alpha_lower_limit(std::size_t n);

// m(n-m)/2 - sqrt(m(n-m)(n+1)/12) sqrt(2) erfinv(1 - alpha).
double half_normal_critical(std::size_t m, std::size_t n, double alpha);

// Classical Siegel-Tukey ranks by sorted position: 1 to the lowest, 2-3 to the
// two highest, 4-5 to the next two lowest, and so on.
std::vector<std::size_t> classic_rank_values(std::size_t n);

struct ClassicResult {
  double statistic = 0.0;       // min(U1 - n1(n1+1)/2, U2 - n2(n2+1)/2)
  double critical_value = 0.0;  // pi_alpha with m = min(n1, n2)
  bool reject = false;          // statistic < critical_value
  std::size_t m = 0;
};

// Non-private Siegel-Tukey test with half-normal critical values.
ClassicResult classic_siegel_tukey(std::span<const double> group1,
                                   std::span<const double> group2, double alpha);

}  // namespace rpst
