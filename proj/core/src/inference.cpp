#include "rpst/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"
#include "rpst/random.hpp"
#include "rpst/stats.hpp"

namespace rpst {

namespace {

double median_of(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::vector<double> centered_copy(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  const double med = median_of(out);
  for (double& v : out) v -= med;
  return out;
}

}  // namespace

std::string_view to_string(ReferenceDistribution reference) noexcept {
  return reference == ReferenceDistribution::normal ? "normal" : "normal_laplace";
}

ReferenceDistribution parse_reference(std::string_view text) {
  if (text == "normal_laplace") return ReferenceDistribution::normal_laplace;
  if (text == "normal") return ReferenceDistribution::normal;
  throw Error(ErrorCode::invalid_argument,
              "unknown reference '" + std::string(text) + "' (normal_laplace or normal)");
}

double reference_p_value(double statistic, double sigma, double noise_scale,
                         ReferenceDistribution reference) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::degenerate_variance, "reference sigma is zero");
  const double x = std::abs(statistic);
  if (reference == ReferenceDistribution::normal || noise_scale <= 0.0) {
    return normal_two_sided_p(x / sigma);
  }
  return std::min(1.0, 2.0 * normal_laplace_sf(x, sigma, noise_scale));
}

PrivateTestResult rpst_test(std::span<const double> group1, std::span<const double> group2,
                            const TransformSpec& psi, const ModificationSpec& mod,
                            const PrivacyBudget& budget, NoiseSource& noise,
                            const RpstOptions& options) {
  budget.validate();
  RankedSample sample;
  if (options.center_groups) {
    const std::vector<double> a = centered_copy(group1);
    const std::vector<double> b = centered_copy(group2);
    sample = rank_data(a, b, mod, options.ranking);
  } else {
    sample = rank_data(group1, group2, mod, options.ranking);
  }

  const SensitivityBound bound = sensitivity_bound(psi, sample.n, sample.Q);
  const StatisticValue u1 = u1_statistic(sample, psi);
  const Privatized released = privatize(u1.centered, bound.gs_star, budget.eps_u, noise);
  const GroupSizeEstimate sizes =
      private_group_disparity(sample.n1, sample.n, budget.eps_d, budget.delta, noise);

  const double variance = null_variance(sizes.n1_tilde, sizes.n2_tilde, psi, sample.Q);
  if (!(variance > 0.0)) {
    throw Error(ErrorCode::degenerate_variance, "estimated null variance is zero");
  }

  PrivateTestResult out;
  out.test = "rpst";
  out.statistic = released.value;
  out.noise_scale = released.noise_scale;
  out.sigma = std::sqrt(variance);
  out.z_score = std::abs(out.statistic) / out.sigma;
  out.reference = options.reference;
  out.p_value = reference_p_value(out.statistic, out.sigma, out.noise_scale, out.reference);
  out.group_estimate = sizes;
  out.eps_u = budget.eps_u;
  out.eps_d = budget.eps_d;
  out.delta = budget.delta;
  out.psi = psi.name();
  if (mod.is_proportion()) out.q = mod.proportion();
  out.Q = sample.Q;
  out.n = sample.n;
  return out;
}

PrivateTestResult rpst_test(std::span<const double> group1, std::span<const double> group2,
                            const TransformSpec& psi, const ModificationSpec& mod,
                            const PrivacyBudget& budget, RandomStream& rng,
                            const RpstOptions& options) {
  StreamNoise noise(rng);
  return rpst_test(group1, group2, psi, mod, budget, noise, options);
}

PrivateTestResult rpsr_test(std::span<const Pair> pairs, const TransformSpec& psi,
                            const ModificationSpec& mod, double eps_u, NoiseSource& noise,
                            const RpsrOptions& options) {
  if (pairs.size() < 2) throw Error(ErrorCode::invalid_argument, "RPSR needs n >= 2 pairs");
  if (!(eps_u > 0.0)) throw Error(ErrorCode::invalid_argument, "eps_U must be positive");
  const SignedRankSample sample = signed_rank_data(pairs, mod, options.ranking);
  const double sensitivity = w1_sensitivity(psi, sample.n, sample.Q);
  const Privatized released = privatize(w1_statistic(sample, psi), sensitivity, eps_u, noise);

  PrivateTestResult out;
  out.test = "rpsr";
  out.statistic = released.value;
  out.noise_scale = released.noise_scale;
  out.sigma = std::sqrt(w1_null_variance(psi, sample.n, sample.Q));
  out.z_score = std::abs(out.statistic) / out.sigma;
  out.reference = options.reference;
  out.p_value = reference_p_value(out.statistic, out.sigma, out.noise_scale, out.reference);
  out.eps_u = eps_u;
  out.psi = psi.name();
  if (mod.is_proportion()) out.q = mod.proportion();
  out.Q = sample.Q;
  out.n = sample.n;
  return out;
}

PrivateTestResult rpsr_test(std::span<const Pair> pairs, const TransformSpec& psi,
                            const ModificationSpec& mod, double eps_u, RandomStream& rng,
                            const RpsrOptions& options) {
  StreamNoise noise(rng);
  return rpsr_test(pairs, psi, mod, eps_u, noise, options);
}

double classic_alpha_lower_limit(std::size_t n) {
  if (n < 1) return 1.0;
  return std::erfc(std::sqrt(1.5 * static_cast<double>(n - 1)));
}

double half_normal_critical(std::size_t m, std::size_t n, double alpha) {
  if (2 * m > n) throw Error(ErrorCode::invalid_argument, "need 0 <= m <= n/2");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw Error(ErrorCode::alpha_out_of_range, "alpha must lie in (0, 0.5)");
  }
  const double mm = static_cast<double>(m);
  const double nn = static_cast<double>(n);
  const double product = mm * (nn - mm);
  return 0.5 * product -
         std::sqrt(product * (nn + 1.0) / 12.0) * std::numbers::sqrt2 * erf_inv(1.0 - alpha);
}

std::vector<std::size_t> classic_rank_values(std::size_t n) {
  const std::vector<std::size_t> order = extreme_inward_order(n, Alternation::paired);
  std::vector<std::size_t> ranks(n, 0);
  for (std::size_t k = 0; k < n; ++k) ranks[order[k]] = k + 1;
  return ranks;
}

ClassicResult classic_siegel_tukey(std::span<const double> group1,
                                   std::span<const double> group2, double alpha) {
  if (group1.empty() || group2.empty()) {
    throw Error(ErrorCode::invalid_argument, "both groups need at least one observation");
  }
  const std::size_t n1 = group1.size();
  const std::size_t n2 = group2.size();
  const std::size_t n = n1 + n2;
  if (!(alpha > classic_alpha_lower_limit(n) && alpha < 0.5)) {
    throw Error(ErrorCode::alpha_out_of_range,
                "alpha must satisfy 1 - erf(sqrt(3(n-1)/2)) < alpha < 0.5");
  }

  std::vector<double> combined(group1.begin(), group1.end());
  combined.insert(combined.end(), group2.begin(), group2.end());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return combined[a] < combined[b]; });
  for (std::size_t k = 1; k < n; ++k) {
    if (combined[order[k]] == combined[order[k - 1]]) {
      throw Error(ErrorCode::ties_without_jitter, "classic Siegel-Tukey needs distinct values");
    }
  }

  const std::vector<std::size_t> rank_by_position = classic_rank_values(n);
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto r = static_cast<double>(rank_by_position[pos]);
    (order[pos] < n1 ? sum1 : sum2) += r;
  }
  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);

  ClassicResult out;
  out.statistic = std::min(sum1 - d1 * (d1 + 1.0) / 2.0, sum2 - d2 * (d2 + 1.0) / 2.0);
  out.m = std::min(n1, n2);
  out.critical_value = half_normal_critical(out.m, n, alpha);
  out.reject = out.statistic < out.critical_value;
  return out;
}

}  // namespace rpst
