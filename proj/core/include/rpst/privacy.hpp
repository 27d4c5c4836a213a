#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rpst {

class RandomStream;

// (eps_U, eps_d, delta) for the two-sample test. The statistic is
// eps_U-DP, the group-size disparity (eps_d, delta)-DP, and the pair is
// (eps_U + eps_d, delta)-DP by basic composition.
struct PrivacyBudget {
  double eps_u = 0.8;
  double eps_d = 0.2;
  double delta = 1e-6;

  static constexpr double kDefaultSplit = 0.8;

  // eps_U = split * eps, eps_d = (1 - split) * eps.
  static PrivacyBudget from_total(double eps, double split = kDefaultSplit,
                                  double delta = 1e-6);

  double total_epsilon() const noexcept { return eps_u + eps_d; }
  void validate() const;
};

struct EpsilonDelta {
  double epsilon = 0.0;
  double delta = 0.0;
};

// Basic composition: component-wise sums.
EpsilonDelta compose(std::span<const EpsilonDelta> budgets);

// Source of standard Laplace variates for the mechanisms. Tests substitute
// fixed draws; production code wraps a RandomStream.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double standard_laplace() = 0;
};

class StreamNoise final : public NoiseSource {
 public:
  explicit StreamNoise(RandomStream& stream) : stream_(&stream) {}
  double standard_laplace() override;

 private:
  RandomStream* stream_;
};

// Replays the given draws in order, then repeats the last one (0 if empty).
class FixedNoise final : public NoiseSource {
 public:
  explicit FixedNoise(std::vector<double> draws = {}) : draws_(std::move(draws)) {}
  double standard_laplace() override;

 private:
  std::vector<double> draws_;
  std::size_t next_ = 0;
};

// Inverse Laplace CDF: sign(u - 1/2) * ln(1 - 2|u - 1/2|) * (-scale).
double laplace_from_uniform(double u, double scale);

// One Laplace(0, scale) draw from a single uniform variate.
double laplace_sample(double scale, RandomStream& rng);

// Analytic Laplace(0, scale) CDF.
double laplace_cdf(double x, double scale);

struct Privatized {
  double value = 0.0;
  double noise_scale = 0.0;
};

// stat + Z * gs_star / eps with Z standard Laplace.
Privatized privatize(double stat, double gs_star, double eps, NoiseSource& noise);
Privatized privatize(double stat, double gs_star, double eps, RandomStream& rng);

struct GroupSizeEstimate {
  double d1_star = 0.0;
  double n1_tilde = 0.0;
  double n2_tilde = 0.0;
};

// Private, deliberately small estimate of d1 = |n1 - n/2|: with probability
// at least 1 - delta it does not exceed d1, so the plugged-in null variance
// is conservative. d1_star is clamped to n/2 - 1 so that n1_tilde >= 1.
GroupSizeEstimate private_group_disparity(std::size_t n1, std::size_t n, double eps_d,
                                          double delta, NoiseSource& noise);
GroupSizeEstimate private_group_disparity(std::size_t n1, std::size_t n, double eps_d,
                                          double delta, RandomStream& rng);

}  // namespace rpst
