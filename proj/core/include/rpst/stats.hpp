#pragma once

#include <cstddef>
#include <span>

#include "rpst/ranks.hpp"
#include "rpst/transforms.hpp"

namespace rpst {

// Group-1 transformed rank sum, its null expectation and the centred U1.
struct StatisticValue {
  double raw_sum = 0.0;
  double expectation = 0.0;
  double centered = 0.0;
};

StatisticValue u1_statistic(const RankedSample& sample, const TransformSpec& psi);

// Exact null variance of the group-1 rank sum for group sizes (n1, n2).
// Group sizes are real so that the half-integer private estimates can be
// plugged in directly; n1 + n2 must be an integer >= 2.
double null_variance(double n1, double n2, const TransformSpec& psi, std::size_t Q);

struct SensitivityBound {
  double gs_star = 0.0;
  double psi_top = 0.0;     // psi(n - Q)
  double psi_second = 0.0;  // psi(n - Q - 1)
  double psi_bar = 0.0;     // psi_bar_Q
};

// max{psi(n-Q), psi(n-Q) + psi(n-Q-1) - psi_bar_Q}; requires n - Q >= 2.
SensitivityBound sensitivity_bound(const TransformSpec& psi, std::size_t n, std::size_t Q);

// sum_i s_i psi((r_i - Q) v 0).
double w1_statistic(const SignedRankSample& sample, const TransformSpec& psi);

// 2 psi(n - Q); requires n - Q >= 1.
double w1_sensitivity(const TransformSpec& psi, std::size_t n, std::size_t Q);

// sum_{i=1}^{n-Q} psi(i)^2.
double w1_null_variance(const TransformSpec& psi, std::size_t n, std::size_t Q);

struct SrsworMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance of the sum of a size-k simple random sample drawn
// without replacement from `values`.
SrsworMoments srswor_moments(std::span<const double> values, std::size_t k);

// GS*(U1) / (sigma(n1, n2, psi, Q) eps_U): noise-to-signal ratio of the
// privatised statistic.
double pi_n_diagnostic(const TransformSpec& psi, std::size_t n1, std::size_t n2,
                       std::size_t Q, double eps_u);

}  // namespace rpst
