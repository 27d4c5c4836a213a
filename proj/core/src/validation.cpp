#include "rpst/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "rpst/error.hpp"
#include "rpst/inference.hpp"
#include "rpst/oracle.hpp"
#include "rpst/privacy.hpp"
#include "rpst/random.hpp"
#include "rpst/stats.hpp"

namespace rpst::oracle {

namespace {

std::string describe(const char* format, double a, double b = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, format, a, b);
  return buffer;
}

std::string instance(const TransformSpec& psi, std::size_t n, std::size_t n1, std::size_t Q) {
  return " at psi=" + psi.name() + " n=" + std::to_string(n) + " n1=" + std::to_string(n1) +
         " Q=" + std::to_string(Q);
}

}  // namespace

CheckResult check_variance_equivalence(std::size_t max_n,
                                       std::span<const TransformSpec> family) {
  CheckResult out{"variance_equivalence", true, {}};
  double worst_rel = 0.0;
  double worst_mean = 0.0;
  std::size_t instances = 0;
  std::string where;
  for (const TransformSpec& psi : family) {
    for (std::size_t n = 2; n <= max_n; ++n) {
      for (std::size_t n1 = 1; n1 < n; ++n1) {
        for (std::size_t Q = 0; Q + 2 <= n; ++Q) {
          const ExactDistribution dist = exact_u1_null(n, n1, Q, psi);
          const double expected = null_variance(static_cast<double>(n1),
                                                static_cast<double>(n - n1), psi, Q);
          const double rel = std::abs(dist.variance() - expected) / expected;
          const double mean = std::abs(dist.mean());
          if (rel > worst_rel) {
            worst_rel = rel;
            where = instance(psi, n, n1, Q);
          }
          worst_mean = std::max(worst_mean, mean);
          if (rel > 1e-9 || mean > 1e-12) out.passed = false;
          ++instances;
        }
      }
    }
  }
  out.detail = std::to_string(instances) + " instances, max rel var error " +
               describe("%.3g", worst_rel) + where + ", max |mean| " +
               describe("%.3g", worst_mean);
  return out;
}

CheckResult check_u1_sensitivity(std::size_t max_n, std::span<const TransformSpec> family) {
  CheckResult out{"u1_sensitivity_bound", true, {}};
  double worst_ratio = 0.0;
  double worst_excess = -1.0;
  std::size_t instances = 0;
  std::string where;
  for (const TransformSpec& psi : family) {
    for (std::size_t n = 2; n <= max_n; ++n) {
      for (std::size_t n1 = 1; n1 < n; ++n1) {
        for (std::size_t Q = 0; Q + 2 <= n; ++Q) {
          const double observed = exhaustive_u1_sensitivity(n1, n - n1, Q, psi);
          const double bound = sensitivity_bound(psi, n, Q).gs_star;
          if (observed > bound + 1e-12) out.passed = false;
          if (observed / bound > worst_ratio) {
            worst_ratio = observed / bound;
            where = instance(psi, n, n1, Q);
          }
          worst_excess = std::max(worst_excess, observed - bound);
          ++instances;
        }
      }
    }
  }
  out.detail = std::to_string(instances) + " instances, max observed/bound " +
               describe("%.12g", worst_ratio) + where + ", max excess " +
               describe("%.3g", worst_excess);
  return out;
}

CheckResult check_w1_null_variance(std::size_t max_n, std::span<const TransformSpec> family) {
  CheckResult out{"w1_null_variance", true, {}};
  double worst_rel = 0.0;
  double worst_mean = 0.0;
  std::size_t instances = 0;
  for (const TransformSpec& psi : family) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (std::size_t Q = 0; Q < n; ++Q) {
        const ExactDistribution dist = exact_w1_null(n, Q, psi);
        const double expected = w1_null_variance(psi, n, Q);
        const double rel = std::abs(dist.variance() - expected) / expected;
        worst_rel = std::max(worst_rel, rel);
        worst_mean = std::max(worst_mean, std::abs(dist.mean()));
        if (rel > 1e-9) out.passed = false;
        ++instances;
      }
    }
  }
  out.detail = std::to_string(instances) + " instances, max rel var error " +
               describe("%.3g", worst_rel) + ", max |mean| " + describe("%.3g", worst_mean);
  return out;
}

CheckResult check_w1_sensitivity(std::size_t max_n, std::span<const TransformSpec> family) {
  CheckResult out{"w1_sensitivity_bound", true, {}};
  double worst_ratio = 0.0;
  std::size_t instances = 0;
  for (const TransformSpec& psi : family) {
    for (std::size_t n = 1; n <= max_n; ++n) {
      for (std::size_t Q = 0; Q < n; ++Q) {
        const double observed = exhaustive_w1_sensitivity(n, Q, psi);
        const double bound = w1_sensitivity(psi, n, Q);
        if (observed > bound + 1e-12) out.passed = false;
        worst_ratio = std::max(worst_ratio, observed / bound);
        ++instances;
      }
    }
  }
  out.detail = std::to_string(instances) + " instances, max observed/bound " +
               describe("%.12g", worst_ratio);
  return out;
}

CheckResult check_pi_alpha_monotone(std::size_t n_lo, std::size_t n_hi, double alpha) {
  CheckResult out{"pi_alpha_monotone", true, {}};
  std::size_t violations = 0;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    for (std::size_t m = 2; 2 * m <= n; ++m) {
      if (!(half_normal_critical(m, n, alpha) > half_normal_critical(m - 1, n, alpha))) {
        if (violations == 0) {
          out.detail = "first violation at n=" + std::to_string(n) + " m=" + std::to_string(m);
        }
        ++violations;
        out.passed = false;
      }
    }
  }
  if (violations == 0) {
    out.detail = "strictly increasing for n=" + std::to_string(n_lo) + ".." +
                 std::to_string(n_hi) + describe(" at alpha=%.3g", alpha);
  } else {
    out.detail += ", " + std::to_string(violations) + " violations";
  }
  return out;
}

CheckResult check_classic_matches_wilcoxon(std::size_t max_n) {
  CheckResult out{"classic_vs_wilcoxon_null", true, {}};
  std::size_t instances = 0;
  for (std::size_t n = 2; n <= max_n; ++n) {
    const std::vector<std::size_t> st = classic_rank_values(n);
    for (std::size_t n1 = 1; n1 < n; ++n1) {
      const std::size_t n2 = n - n1;
      const long shift1 = static_cast<long>(n1 * (n1 + 1) / 2);
      const long shift2 = static_cast<long>(n2 * (n2 + 1) / 2);
      const long total = static_cast<long>(n * (n + 1) / 2);
      std::map<long, std::uint64_t> st_sum, wx_sum, st_min, wx_min;
      for_each_subset_mask(n, n1, [&](std::uint64_t mask) {
        long s = 0;
        long w = 0;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
          const auto pos = static_cast<std::size_t>(std::countr_zero(m));
          s += static_cast<long>(st[pos]);
          w += static_cast<long>(pos + 1);
        }
        ++st_sum[s - shift1];
        ++wx_sum[w - shift1];
        ++st_min[std::min(s - shift1, total - s - shift2)];
        ++wx_min[std::min(w - shift1, total - w - shift2)];
      });
      if (st_sum != wx_sum || st_min != wx_min) {
        out.passed = false;
        if (out.detail.empty()) {
          out.detail = "mismatch at n=" + std::to_string(n) + " n1=" + std::to_string(n1);
        }
      }
      ++instances;
    }
  }
  if (out.passed) out.detail = std::to_string(instances) + " (n, n1) splits identical";
  return out;
}

ConservativenessReport check_group_size_conservative(std::span<const GroupSizeCase> cases,
                                                     std::span<const double> eps_d,
                                                     double delta, std::size_t reps,
                                                     std::uint64_t seed) {
  ConservativenessReport report{{"group_size_fraction", true, {}},
                                {"group_size_variance_order", true, {}}};
  const std::vector<TransformSpec> family = TransformSpec::standard_family();
  const double limit =
      delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(reps));
  double worst_fraction = 0.0;
  std::size_t variance_failures = 0;
  std::size_t failures_despite_small_d1 = 0;
  std::size_t total = 0;
  std::uint64_t stream_index = 0;
  for (const GroupSizeCase& c : cases) {
    const double d1 = std::abs(static_cast<double>(c.n1) - static_cast<double>(c.n) / 2.0);
    std::vector<double> truth;
    for (const TransformSpec& psi : family) {
      truth.push_back(null_variance(static_cast<double>(c.n1),
                                    static_cast<double>(c.n - c.n1), psi, 0));
    }
    for (double eps : eps_d) {
      RandomStream rng = RandomStream::derive(seed, stream_index++);
      std::size_t above = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const GroupSizeEstimate est = private_group_disparity(c.n1, c.n, eps, delta, rng);
        const bool over = est.d1_star > d1;
        if (over) ++above;
        for (std::size_t k = 0; k < family.size(); ++k) {
          if (null_variance(est.n1_tilde, est.n2_tilde, family[k], 0) < truth[k]) {
            ++variance_failures;
            if (!over) ++failures_despite_small_d1;
            break;
          }
        }
        ++total;
      }
      const double fraction = static_cast<double>(above) / static_cast<double>(reps);
      worst_fraction = std::max(worst_fraction, fraction);
      if (fraction > limit) report.fraction.passed = false;
    }
  }
  report.fraction.detail = describe("max fraction d1*>d1 = %.4f (limit %.4f)", worst_fraction,
                                    limit);
  report.variance.passed = variance_failures == 0;
  report.variance.detail = std::to_string(variance_failures) + " of " + std::to_string(total) +
                           " replications with plugged-in variance below the true variance, " +
                           std::to_string(failures_despite_small_d1) +
                           " of them with d1* <= d1";
  return report;
}

std::vector<CheckResult> run_oracle_suite(std::size_t max_n,
                                          std::span<const TransformSpec> family,
                                          std::uint64_t seed) {
  if (max_n > kMaxSignFlipN) {
    throw Error(ErrorCode::too_large,
                "max-n is capped at " + std::to_string(kMaxSignFlipN));
  }
  if (max_n < 2) throw Error(ErrorCode::invalid_argument, "max-n must be at least 2");
  std::vector<CheckResult> results;
  results.push_back(check_variance_equivalence(max_n, family));
  results.push_back(check_u1_sensitivity(std::min(max_n, kMaxU1SensitivityN), family));
  results.push_back(check_w1_null_variance(max_n, family));
  results.push_back(check_w1_sensitivity(std::min(max_n, kMaxU1SensitivityN), family));
  results.push_back(check_pi_alpha_monotone(3, 200, 0.05));
  results.push_back(check_classic_matches_wilcoxon(max_n));
  const GroupSizeCase cases[] = {{100, 60}, {101, 51}, {500, 400}};
  const double eps_d[] = {0.1, 1.0};
  results.push_back(check_group_size_conservative(cases, eps_d, 0.05, 10'000, seed).fraction);
  return results;
}

}  // namespace rpst::oracle
