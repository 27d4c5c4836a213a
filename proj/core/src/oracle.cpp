#include "rpst/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"
#include "rpst/ranks.hpp"

namespace rpst::oracle {

namespace {

ExactDistribution tabulate(std::vector<double> values) {
  ExactDistribution out;
  out.outcomes = values.size();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double tolerance = 1e-11 * scale;

  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t end = start + 1;
    while (end < values.size() && values[end] - values[start] <= tolerance) ++end;
    CompensatedSum group;
    for (std::size_t i = start; i < end; ++i) group.add(values[i]);
    out.support.push_back(group.value() / static_cast<double>(end - start));
    out.counts.push_back(end - start);
    start = end;
  }
  return out;
}

void require_enumerable(std::uint64_t count, const char* what) {
  if (count > kMaxSubsets) {
    throw Error(ErrorCode::too_large, std::string(what) + " would enumerate " +
                                          std::to_string(count) + " outcomes (cap " +
                                          std::to_string(kMaxSubsets) + ")");
  }
}

std::vector<double> transformed_rank_values(std::size_t n, std::size_t Q,
                                            const TransformSpec& psi) {
  const std::vector<std::size_t> ranks = center_outward_rank_values(n, Q);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = psi.apply(ranks[i]);
  return out;
}

void check_grid_covers(std::span<const double> grid, std::size_t n) {
  const double top = static_cast<double>(n);
  bool below = false;
  bool above = false;
  std::vector<bool> between(n > 0 ? n - 1 : 0, false);
  for (double g : grid) {
    if (g < 1.0) below = true;
    if (g > top) above = true;
    const double floor_g = std::floor(g);
    if (g > 1.0 && g < top && g != floor_g) {
      between[static_cast<std::size_t>(floor_g) - 1] = true;
    }
  }
  if (!below || !above || std::find(between.begin(), between.end(), false) != between.end()) {
    throw Error(ErrorCode::invalid_argument,
                "sensitivity grid must have points below, above and between all base points");
  }
}

}  // namespace

double ExactDistribution::mean() const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc.add(support[i] * static_cast<double>(counts[i]));
  }
  return acc.value() / static_cast<double>(outcomes);
}

double ExactDistribution::variance() const {
  const double mu = mean();
  CompensatedSum acc;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double d = support[i] - mu;
    acc.add(d * d * static_cast<double>(counts[i]));
  }
  return acc.value() / static_cast<double>(outcomes);
}

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t numerator = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / numerator) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * numerator / i;
  }
  return result;
}

ExactDistribution exact_subset_sum_null(std::span<const double> scores, std::size_t k,
                                        double offset) {
  const std::size_t n = scores.size();
  if (k > n) throw Error(ErrorCode::invalid_argument, "subset size exceeds population");
  require_enumerable(binomial(n, k), "subset enumeration");
  std::vector<double> values;
  values.reserve(binomial(n, k));
  for_each_subset_mask(n, k, [&](std::uint64_t mask) {
    CompensatedSum acc;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      acc.add(scores[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    values.push_back(acc.value() - offset);
  });
  return tabulate(std::move(values));
}

ExactDistribution exact_u1_null(std::size_t n, std::size_t n1, std::size_t Q,
                                const TransformSpec& psi) {
  if (n1 > n) throw Error(ErrorCode::invalid_argument, "n1 exceeds n");
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  require_enumerable(binomial(n, n1), "exact_u1_null");
  const std::vector<double> scores = transformed_rank_values(n, Q, psi);
  const double mu1 =
      static_cast<double>(n1) / static_cast<double>(n) * psi_sums(psi, n - Q).sum;
  return exact_subset_sum_null(scores, n1, mu1);
}

std::vector<double> default_sensitivity_grid(std::size_t n) {
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) grid[k] = static_cast<double>(k) + 0.5;
  return grid;
}

double exhaustive_u1_sensitivity(std::size_t n1, std::size_t n2, std::size_t Q,
                                 const TransformSpec& psi, std::span<const double> grid) {
  const std::size_t n = n1 + n2;
  if (n1 == 0 || n2 == 0) throw Error(ErrorCode::invalid_argument, "groups must be non-empty");
  if (n > kMaxU1SensitivityN) {
    throw Error(ErrorCode::too_large, "exhaustive U1 sensitivity is capped at n = " +
                                          std::to_string(kMaxU1SensitivityN));
  }
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  check_grid_covers(grid, n);

  const std::vector<double> scores = transformed_rank_values(n, Q, psi);
  const double total = psi_sums(psi, n - Q).sum;
  const double dn = static_cast<double>(n);
  auto u1_of = [&](std::uint64_t mask) {
    CompensatedSum acc;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      acc.add(scores[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    return acc.value() - static_cast<double>(std::popcount(mask)) / dn * total;
  };

  double worst = 0.0;
  for_each_subset_mask(n, n1, [&](std::uint64_t base) {
    const double u_base = u1_of(base);
    for (std::size_t removed = 0; removed < n; ++removed) {
      // Labels of the n-1 remaining points, in sorted order.
      const std::uint64_t low = base & ((std::uint64_t{1} << removed) - 1);
      const std::uint64_t high = base >> (removed + 1);
      for (double g : grid) {
        if (g == std::floor(g) && g >= 1.0 && g <= dn &&
            static_cast<std::size_t>(g) != removed + 1) {
          continue;  // would tie with a remaining point
        }
        // Sorted insertion slot among the remaining points (values 1..n
        // without removed+1).
        std::size_t slot = 0;
        for (std::size_t v = 1; v <= n; ++v) {
          if (v != removed + 1 && static_cast<double>(v) < g) ++slot;
        }
        const std::uint64_t rest = low | (high << removed);
        const std::uint64_t below = rest & ((std::uint64_t{1} << slot) - 1);
        const std::uint64_t above = (rest >> slot) << (slot + 1);
        for (std::uint64_t label = 0; label < 2; ++label) {
          const std::uint64_t next = below | (label << slot) | above;
          const int size1 = std::popcount(next);
          if (size1 == 0 || static_cast<std::size_t>(size1) == n) continue;
          worst = std::max(worst, std::abs(u1_of(next) - u_base));
        }
      }
    }
  });
  return worst;
}

double exhaustive_u1_sensitivity(std::size_t n1, std::size_t n2, std::size_t Q,
                                 const TransformSpec& psi) {
  const std::vector<double> grid = default_sensitivity_grid(n1 + n2);
  return exhaustive_u1_sensitivity(n1, n2, Q, psi, grid);
}

ExactDistribution exact_w1_null(std::size_t n, std::size_t Q, const TransformSpec& psi) {
  if (n > kMaxSignFlipN) {
    throw Error(ErrorCode::too_large,
                "exact_w1_null is capped at n = " + std::to_string(kMaxSignFlipN));
  }
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  std::vector<double> scores(n);
  for (std::size_t r = 1; r <= n; ++r) scores[r - 1] = psi.apply(r > Q ? r - Q : 0);
  const std::uint64_t patterns = std::uint64_t{1} << n;
  std::vector<double> values;
  values.reserve(patterns);
  for (std::uint64_t signs = 0; signs < patterns; ++signs) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(((signs >> i) & 1U) ? scores[i] : -scores[i]);
    }
    values.push_back(acc.value());
  }
  return tabulate(std::move(values));
}

double exhaustive_w1_sensitivity(std::size_t n, std::size_t Q, const TransformSpec& psi) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "need n >= 1");
  if (n > kMaxW1SensitivityN) {
    throw Error(ErrorCode::too_large, "exhaustive W1 sensitivity is capped at n = " +
                                          std::to_string(kMaxW1SensitivityN));
  }
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  std::vector<double> by_rank(n);
  for (std::size_t r = 1; r <= n; ++r) by_rank[r - 1] = psi.apply(r > Q ? r - Q : 0);
  // W1 for a sign pattern indexed by rank position (bit set = positive).
  auto w1_of = [&](std::uint64_t positive) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(((positive >> i) & 1U) ? by_rank[i] : -by_rank[i]);
    }
    return acc.value();
  };

  double worst = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t base = 0; base < patterns; ++base) {
    const double w_base = w1_of(base);
    for (std::size_t removed = 0; removed < n; ++removed) {
      const std::uint64_t low = base & ((std::uint64_t{1} << removed) - 1);
      const std::uint64_t rest = low | ((base >> (removed + 1)) << removed);
      // New |difference| lands in any of the n slots among the n-1 others.
      for (std::size_t slot = 0; slot < n; ++slot) {
        const std::uint64_t below = rest & ((std::uint64_t{1} << slot) - 1);
        const std::uint64_t above = (rest >> slot) << (slot + 1);
        for (std::uint64_t sign = 0; sign < 2; ++sign) {
          worst = std::max(worst, std::abs(w1_of(below | (sign << slot) | above) - w_base));
        }
      }
    }
  }
  return worst;
}

}  // namespace rpst::oracle
