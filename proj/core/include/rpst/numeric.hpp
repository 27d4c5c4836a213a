#pragma once

// Small numerical kernels shared by the statistics and inference modules.

#include <cmath>
#include <span>

namespace rpst {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

// Standard normal CDF and upper tail, via erfc.
double normal_cdf(double x) noexcept;
double normal_sf(double x) noexcept;

// Two-sided normal tail 2(1 - Phi(|z|)).
double normal_two_sided_p(double z) noexcept;

// exp(x^2 / 2) * (1 - Phi(x)); stable for large x.
double scaled_normal_sf(double x) noexcept;

// Inverse error function on (-1, 1). Rational initial guess refined by
// Halley steps; relative error well below 1e-12 away from the endpoints.
double erf_inv(double y);

// P(N(0, sigma^2) + Laplace(0, b) > x). Either scale may be zero.
double normal_laplace_sf(double x, double sigma, double b) noexcept;

}  // namespace rpst
