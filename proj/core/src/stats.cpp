#include "rpst/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"

namespace rpst {

StatisticValue u1_statistic(const RankedSample& sample, const TransformSpec& psi) {
  CompensatedSum raw;
  for (std::size_t i = 0; i < sample.n; ++i) {
    if (sample.in_group1[i]) raw.add(psi.apply(sample.ranks[i]));
  }
  StatisticValue out;
  out.raw_sum = raw.value();
  out.expectation = static_cast<double>(sample.n1) / static_cast<double>(sample.n) *
                    psi_sums(psi, sample.n - sample.Q).sum;
  out.centered = out.raw_sum - out.expectation;
  return out;
}

double null_variance(double n1, double n2, const TransformSpec& psi, std::size_t Q) {
  const double total = n1 + n2;
  const double rounded = std::round(total);
  if (!(n1 >= 0.0 && n2 >= 0.0) || std::abs(total - rounded) > 1e-9 || rounded < 2.0) {
    throw Error(ErrorCode::invalid_argument,
                "null_variance needs non-negative group sizes summing to an integer >= 2");
  }
  const auto n = static_cast<std::size_t>(rounded);
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  const PsiSums sums = psi_sums(psi, n - Q);
  // sum_{i<j} psi(i) psi(j) in O(n).
  const double cross = 0.5 * (sums.sum * sums.sum - sums.sum_squares);
  const double p = n1 / rounded;
  return p * (1.0 - p) * sums.sum_squares +
         2.0 * p * ((n1 - 1.0) / (rounded - 1.0) - p) * cross;
}

SensitivityBound sensitivity_bound(const TransformSpec& psi, std::size_t n, std::size_t Q) {
  if (Q > n || n - Q < 2) {
    throw Error(ErrorCode::q_too_large,
                "sensitivity bound needs n - Q >= 2 (n = " + std::to_string(n) +
                    ", Q = " + std::to_string(Q) + ")");
  }
  SensitivityBound out;
  out.psi_top = psi.apply(n - Q);
  out.psi_second = psi.apply(n - Q - 1);
  out.psi_bar = psi_bar_q(psi, n, Q);
  out.gs_star = std::max(out.psi_top, out.psi_top + out.psi_second - out.psi_bar);
  return out;
}

double w1_statistic(const SignedRankSample& sample, const TransformSpec& psi) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < sample.n; ++i) {
    acc.add(static_cast<double>(sample.signs[i]) * psi.apply(sample.modified_ranks[i]));
  }
  return acc.value();
}

double w1_sensitivity(const TransformSpec& psi, std::size_t n, std::size_t Q) {
  if (Q >= n) {
    throw Error(ErrorCode::q_too_large, "W1 sensitivity needs n - Q >= 1");
  }
  return 2.0 * psi.apply(n - Q);
}

double w1_null_variance(const TransformSpec& psi, std::size_t n, std::size_t Q) {
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  return psi_sums(psi, n - Q).sum_squares;
}

SrsworMoments srswor_moments(std::span<const double> values, std::size_t k) {
  const std::size_t count = values.size();
  if (k > count) throw Error(ErrorCode::invalid_argument, "sample size k exceeds population");
  if (count == 0) return {};
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (double x : values) {
    sum.add(x);
    sum_sq.add(x * x);
  }
  const double n = static_cast<double>(count);
  const double kk = static_cast<double>(k);
  const double total = sum.value();
  const double cross = 0.5 * (total * total - sum_sq.value());
  const double pair_fraction = count > 1 ? kk * (kk - 1.0) / (n * (n - 1.0)) : 0.0;
  SrsworMoments out;
  out.mean = kk / n * total;
  out.variance = kk / n * sum_sq.value() + 2.0 * pair_fraction * cross - out.mean * out.mean;
  return out;
}

double pi_n_diagnostic(const TransformSpec& psi, std::size_t n1, std::size_t n2,
                       std::size_t Q, double eps_u) {
  if (!(eps_u > 0.0)) throw Error(ErrorCode::invalid_argument, "eps_U must be positive");
  const double variance =
      null_variance(static_cast<double>(n1), static_cast<double>(n2), psi, Q);
  if (!(variance > 0.0)) {
    throw Error(ErrorCode::degenerate_variance, "null variance is zero");
  }
  return sensitivity_bound(psi, n1 + n2, Q).gs_star / (std::sqrt(variance) * eps_u);
}

}  // namespace rpst
