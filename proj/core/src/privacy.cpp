#include "rpst/privacy.hpp"

#include <algorithm>
#include <cmath>

#include "rpst/error.hpp"
#include "rpst/random.hpp"

namespace rpst {

PrivacyBudget PrivacyBudget::from_total(double eps, double split, double delta) {
  if (!(split > 0.0 && split < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "budget split must lie in (0,1)");
  }
  PrivacyBudget out{eps * split, eps * (1.0 - split), delta};
  out.validate();
  return out;
}

void PrivacyBudget::validate() const {
  if (!(eps_u > 0.0) || !std::isfinite(eps_u)) {
    throw Error(ErrorCode::invalid_argument, "eps_U must be positive");
  }
  if (!(eps_d > 0.0) || !std::isfinite(eps_d)) {
    throw Error(ErrorCode::invalid_argument, "eps_d must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "delta must lie in (0,1)");
  }
}

EpsilonDelta compose(std::span<const EpsilonDelta> budgets) {
  EpsilonDelta total;
  for (const auto& b : budgets) {
    if (!(b.epsilon > 0.0) || !(b.delta >= 0.0)) {
      throw Error(ErrorCode::invalid_argument, "composition needs eps > 0 and delta >= 0");
    }
    total.epsilon += b.epsilon;
    total.delta += b.delta;
  }
  return total;
}

double StreamNoise::standard_laplace() { return laplace_sample(1.0, *stream_); }

double FixedNoise::standard_laplace() {
  if (draws_.empty()) return 0.0;
  const double z = draws_[std::min(next_, draws_.size() - 1)];
  ++next_;
  return z;
}

double laplace_from_uniform(double u, double scale) {
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double sign = centered > 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(centered));
}

double laplace_sample(double scale, RandomStream& rng) {
  if (!(scale > 0.0)) throw Error(ErrorCode::invalid_argument, "Laplace scale must be positive");
  return laplace_from_uniform(rng.uniform(), scale);
}

double laplace_cdf(double x, double scale) {
  return x < 0.0 ? 0.5 * std::exp(x / scale) : 1.0 - 0.5 * std::exp(-x / scale);
}

Privatized privatize(double stat, double gs_star, double eps, NoiseSource& noise) {
  if (!(gs_star > 0.0)) throw Error(ErrorCode::invalid_argument, "sensitivity must be positive");
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  const double scale = gs_star / eps;
  return {stat + scale * noise.standard_laplace(), scale};
}

Privatized privatize(double stat, double gs_star, double eps, RandomStream& rng) {
  StreamNoise noise(rng);
  return privatize(stat, gs_star, eps, noise);
}

GroupSizeEstimate private_group_disparity(std::size_t n1, std::size_t n, double eps_d,
                                          double delta, NoiseSource& noise) {
  if (n1 < 1 || n1 + 1 > n) {
    throw Error(ErrorCode::invalid_argument, "need 1 <= n1 <= n - 1");
  }
  if (!(eps_d > 0.0)) throw Error(ErrorCode::invalid_argument, "eps_d must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "delta must lie in (0,1)");
  }
  const double half_n = 0.5 * static_cast<double>(n);
  const double d1 = std::abs(static_cast<double>(n1) - half_n);
  const double noisy = d1 + noise.standard_laplace() / eps_d;
  double d1_star = std::max(std::ceil(noisy + std::log(2.0 * delta) / eps_d), 0.0);
  if (n % 2 == 1) {
    d1_star = d1_star != 0.0 ? d1_star - 0.5 : 0.5;
  }
  d1_star = std::min(d1_star, half_n - 1.0);

  GroupSizeEstimate out;
  out.d1_star = d1_star;
  out.n1_tilde = half_n - d1_star;
  out.n2_tilde = static_cast<double>(n) - out.n1_tilde;
  return out;
}

GroupSizeEstimate private_group_disparity(std::size_t n1, std::size_t n, double eps_d,
                                          double delta, RandomStream& rng) {
  StreamNoise noise(rng);
  return private_group_disparity(n1, n, eps_d, delta, noise);
}

}  // namespace rpst
