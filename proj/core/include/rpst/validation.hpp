#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rpst/transforms.hpp"

namespace rpst::oracle {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// null_variance against the enumerated variance of U1 (relative tolerance
// 1e-9) and the enumerated mean against 0 (absolute 1e-12), for every
// n <= max_n, 1 <= n1 <= n-1, Q <= n-2.
CheckResult check_variance_equivalence(std::size_t max_n,
                                       std::span<const TransformSpec> family);

// Exhaustive U1 sensitivity never exceeds the closed-form bound, n <= max_n.
CheckResult check_u1_sensitivity(std::size_t max_n, std::span<const TransformSpec> family);

// w1_null_variance against the 2^n sign-flip enumeration, every Q <= n.
CheckResult check_w1_null_variance(std::size_t max_n, std::span<const TransformSpec> family);

// Exhaustive W1 sensitivity never exceeds 2 psi(n-Q), n <= max_n.
CheckResult check_w1_sensitivity(std::size_t max_n, std::span<const TransformSpec> family);

// half_normal_critical(m, n, alpha) strictly increasing in m = 1..n/2.
CheckResult check_pi_alpha_monotone(std::size_t n_lo, std::size_t n_hi, double alpha);

// Exact null of the Siegel-Tukey rank sum (and of its min form) equals the
// Wilcoxon rank-sum null, every n <= max_n and split.
CheckResult check_classic_matches_wilcoxon(std::size_t max_n);

struct GroupSizeCase {
  std::size_t n = 0;
  std::size_t n1 = 0;
};

struct ConservativenessReport {
  CheckResult fraction;   // share of d1* > d1 within delta + 3 SE
  CheckResult variance;   // plugged-in variance never below the true one
};

// Repeats the private group-size step `reps` times per (case, eps_d).
ConservativenessReport check_group_size_conservative(std::span<const GroupSizeCase> cases,
                                                     std::span<const double> eps_d,
                                                     double delta, std::size_t reps,
                                                     std::uint64_t seed);

// Everything above, sized for `max_n` (exhaustive searches stop at their own
// caps). The group-size step contributes its fraction check only.
std::vector<CheckResult> run_oracle_suite(std::size_t max_n,
                                          std::span<const TransformSpec> family,
                                          std::uint64_t seed);

}  // namespace rpst::oracle
