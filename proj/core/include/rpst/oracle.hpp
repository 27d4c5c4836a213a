#pragma once

// Brute-force ground truth for the closed forms elsewhere in the library:
// exact null distributions by enumeration and exhaustive neighbouring-dataset
// sensitivity searches. Everything here is exponential in n and guarded by
// explicit caps (Error(too_large) beyond them).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rpst/transforms.hpp"

namespace rpst::oracle {

inline constexpr std::uint64_t kMaxSubsets = 1'000'000;
inline constexpr std::size_t kMaxSignFlipN = 16;
inline constexpr std::size_t kMaxU1SensitivityN = 8;
inline constexpr std::size_t kMaxW1SensitivityN = 12;

// Discrete distribution over equally likely enumerated outcomes. Support is
// ascending; outcomes whose values agree to rounding error are merged.
struct ExactDistribution {
  std::vector<double> support;
  std::vector<std::uint64_t> counts;
  std::uint64_t outcomes = 0;

  double probability(std::size_t i) const {
    return static_cast<double>(counts[i]) / static_cast<double>(outcomes);
  }
  double mean() const;
  double variance() const;
};

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k) noexcept;

// Visits every k-subset of {0..n-1} as a bitmask, in increasing numeric order.
template <typename Visitor>
void for_each_subset_mask(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n || n > 63) return;
  if (k == 0) {
    visit(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  while (mask < limit) {
    visit(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
}

// Distribution of sum_{i in S} scores[i] - offset over all |S| = k subsets.
ExactDistribution exact_subset_sum_null(std::span<const double> scores, std::size_t k,
                                        double offset = 0.0);

// Exact permutation null of U1: every n1-subset of the transformed rank-value
// multiset {psi(1), ..., psi(n-Q), 0 x Q}.
ExactDistribution exact_u1_null(std::size_t n, std::size_t n1, std::size_t Q,
                                const TransformSpec& psi);

// Replacement values for an n-point base dataset at positions 1..n: the
// midpoints between neighbours plus one point beyond each end.
std::vector<double> default_sensitivity_grid(std::size_t n);

// max |U1(x) - U1(x')| over every base labelling of positions 1..n with n1
// group-1 points and every single-record replacement x -> x' whose new value
// comes from `grid` and whose group is either label. Replacements that would
// empty a group are skipped.
double exhaustive_u1_sensitivity(std::size_t n1, std::size_t n2, std::size_t Q,
                                 const TransformSpec& psi, std::span<const double> grid);
double exhaustive_u1_sensitivity(std::size_t n1, std::size_t n2, std::size_t Q,
                                 const TransformSpec& psi);

// Exact null of W1 under independent fair signs: all 2^n sign vectors.
ExactDistribution exact_w1_null(std::size_t n, std::size_t Q, const TransformSpec& psi);

// max |W1(v) - W1(w)| over every sign pattern on |differences| 1..n and every
// replacement of one pair by a new |difference| from the default grid with
// either sign.
double exhaustive_w1_sensitivity(std::size_t n, std::size_t Q, const TransformSpec& psi);

}  // namespace rpst::oracle
