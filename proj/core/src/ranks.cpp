#include "rpst/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rpst/error.hpp"
#include "rpst/random.hpp"

namespace rpst {

namespace {

// Smallest positive gap between consecutive distinct entries of a sorted vector.
double min_positive_gap(const std::vector<double>& sorted) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d > 0.0) gap = std::min(gap, d);
  }
  return gap;
}

bool has_adjacent_equal(const std::vector<double>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

void check_jitter(const RankOptions& options, double gap) {
  if (options.jitter_stream == nullptr) {
    throw Error(ErrorCode::invalid_argument, "tie jitter configured without a random stream");
  }
  if (!(options.jitter_scale < 0.5 * gap)) {
    throw Error(ErrorCode::jitter_too_large,
                "jitter scale " + std::to_string(options.jitter_scale) +
                    " could reorder distinct values (half minimum gap is " +
                    std::to_string(0.5 * gap) + ")");
  }
}

void add_jitter(std::vector<double>& values, const RankOptions& options) {
  for (double& v : values) {
    v += options.jitter_stream->uniform(-options.jitter_scale, options.jitter_scale);
  }
}

// Permutation sorting values ascending; the caller guarantees distinct values.
std::vector<std::size_t> sorting_permutation(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

}  // namespace

ModificationSpec ModificationSpec::from_proportion(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "q must lie in [0,1)");
  }
  return ModificationSpec(true, q, 0);
}

ModificationSpec ModificationSpec::from_count(std::size_t Q) {
  return ModificationSpec(false, 0.0, Q);
}

std::size_t ModificationSpec::count(std::size_t n) const {
  if (is_proportion_) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * q_));
  }
  if (Q_ > n) {
    throw Error(ErrorCode::invalid_argument,
                "Q = " + std::to_string(Q_) + " exceeds n = " + std::to_string(n));
  }
  return Q_;
}

std::vector<std::size_t> extreme_inward_order(std::size_t n, Alternation alternation) {
  std::vector<std::size_t> order;
  order.reserve(n);
  if (n == 0) return order;
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  std::size_t remaining = n;
  // The first visit is always the single lowest point; afterwards the side
  // switches after every block of `block` points.
  const std::size_t block = alternation == Alternation::single ? 1 : 2;
  order.push_back(lo++);
  --remaining;
  bool take_high = true;
  while (remaining > 0) {
    for (std::size_t k = 0; k < block && remaining > 0; ++k, --remaining) {
      order.push_back(take_high ? hi-- : lo++);
    }
    take_high = !take_high;
  }
  return order;
}

std::vector<std::size_t> center_outward_rank_values(std::size_t n, std::size_t Q,
                                                    Alternation alternation) {
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  std::vector<std::size_t> values(n, 0);
  const std::vector<std::size_t> order = extreme_inward_order(n, alternation);
  const std::size_t positive = n - Q;
  for (std::size_t k = 0; k < positive; ++k) values[order[k]] = positive - k;
  return values;
}

RankedSample rank_data(std::span<const double> group1, std::span<const double> group2,
                       const ModificationSpec& mod, const RankOptions& options) {
  if (group1.empty() || group2.empty()) {
    throw Error(ErrorCode::invalid_argument, "both groups need at least one observation");
  }
  RankedSample out;
  out.n1 = group1.size();
  out.n2 = group2.size();
  out.n = out.n1 + out.n2;
  out.Q = mod.count(out.n);
  out.values.reserve(out.n);
  out.values.insert(out.values.end(), group1.begin(), group1.end());
  out.values.insert(out.values.end(), group2.begin(), group2.end());
  for (double v : out.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite observation");
  }
  out.in_group1.assign(out.n, 0);
  std::fill_n(out.in_group1.begin(), out.n1, std::uint8_t{1});

  std::vector<double> sorted = out.values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ordering_values = out.values;
  if (has_adjacent_equal(sorted)) {
    if (options.jitter_scale <= 0.0) {
      throw Error(ErrorCode::ties_without_jitter,
                  "tied observations; configure a tie jitter to break them");
    }
    check_jitter(options, min_positive_gap(sorted));
    add_jitter(ordering_values, options);
  }

  const std::vector<std::size_t> order = sorting_permutation(ordering_values);
  const std::vector<std::size_t> by_position =
      center_outward_rank_values(out.n, out.Q, options.alternation);
  out.ranks.assign(out.n, 0);
  for (std::size_t pos = 0; pos < out.n; ++pos) out.ranks[order[pos]] = by_position[pos];
  return out;
}

SignedRankSample signed_rank_data(std::span<const Pair> pairs, const ModificationSpec& mod,
                                  const RankOptions& options) {
  if (pairs.empty()) throw Error(ErrorCode::invalid_argument, "need at least one pair");
  SignedRankSample out;
  out.n = pairs.size();
  out.Q = mod.count(out.n);

  std::vector<double> diffs(out.n);
  for (std::size_t i = 0; i < out.n; ++i) {
    diffs[i] = pairs[i].y - pairs[i].x;
    if (!std::isfinite(diffs[i])) throw Error(ErrorCode::invalid_argument, "non-finite pair");
  }

  std::vector<double> abs_sorted(out.n);
  std::transform(diffs.begin(), diffs.end(), abs_sorted.begin(),
                 [](double d) { return std::abs(d); });
  std::sort(abs_sorted.begin(), abs_sorted.end());
  const bool has_zero = abs_sorted.front() == 0.0;
  const bool has_tie = has_adjacent_equal(abs_sorted);
  if (has_zero || has_tie) {
    if (options.jitter_scale <= 0.0) {
      if (has_zero) {
        throw Error(ErrorCode::zero_difference,
                    "zero paired difference; configure a tie jitter to break it");
      }
      throw Error(ErrorCode::ties_without_jitter,
                  "tied absolute differences; configure a tie jitter to break them");
    }
    std::vector<double> with_origin = abs_sorted;
    with_origin.insert(with_origin.begin(), 0.0);
    check_jitter(options, min_positive_gap(with_origin));
    add_jitter(diffs, options);
  }

  out.abs_diffs.resize(out.n);
  out.signs.resize(out.n);
  for (std::size_t i = 0; i < out.n; ++i) {
    out.abs_diffs[i] = std::abs(diffs[i]);
    out.signs[i] = diffs[i] > 0.0 ? 1 : -1;
  }
  const std::vector<std::size_t> order = sorting_permutation(out.abs_diffs);
  out.ranks.assign(out.n, 0);
  out.modified_ranks.assign(out.n, 0);
  for (std::size_t pos = 0; pos < out.n; ++pos) {
    const std::size_t rank = pos + 1;
    out.ranks[order[pos]] = rank;
    out.modified_ranks[order[pos]] = rank > out.Q ? rank - out.Q : 0;
  }
  return out;
}

}  // namespace rpst
