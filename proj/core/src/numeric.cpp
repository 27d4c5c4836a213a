#include "rpst/numeric.hpp"

#include <limits>
#include <numbers>

#include "rpst/error.hpp"

namespace rpst {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Giles' single-precision approximation, used as a starting point only.
double erf_inv_guess(double x) {
  double w = -std::log((1.0 - x) * (1.0 + x));
  double p;
  if (w < 5.0) {
    w -= 2.5;
    p = 2.81022636e-08;
    p = 3.43273939e-07 + p * w;
    p = -3.5233877e-06 + p * w;
    p = -4.39150654e-06 + p * w;
    p = 0.00021858087 + p * w;
    p = -0.00125372503 + p * w;
    p = -0.00417768164 + p * w;
    p = 0.246640727 + p * w;
    p = 1.50140941 + p * w;
  } else {
    w = std::sqrt(w) - 3.0;
    p = -0.000200214257;
    p = 0.000100950558 + p * w;
    p = 0.00134934322 + p * w;
    p = -0.00367342844 + p * w;
    p = 0.00573950773 + p * w;
    p = -0.0076224613 + p * w;
    p = 0.00943887047 + p * w;
    p = 1.00167406 + p * w;
    p = 2.83297682 + p * w;
  }
  return p * x;
}

}  // namespace

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x * kInvSqrt2); }

double normal_two_sided_p(double z) noexcept {
  return std::erfc(std::abs(z) * kInvSqrt2);
}

double scaled_normal_sf(double x) noexcept {
  if (x < 30.0) {
    return std::exp(0.5 * x * x) * normal_sf(x);
  }
  // Asymptotic Mills ratio; the first omitted term is below 1e-10 here.
  const double inv2 = 1.0 / (x * x);
  return kInvSqrt2Pi / x *
         (1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2)));
}

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) {
    if (y == 1.0) return std::numeric_limits<double>::infinity();
    if (y == -1.0) return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::invalid_argument, "erf_inv argument must lie in [-1, 1]");
  }
  if (y == 0.0) return 0.0;
  const double sign = y < 0.0 ? -1.0 : 1.0;
  const double a = std::abs(y);
  double x = erf_inv_guess(a);
  // Halley on erf(x) - a; near 1 the residual is formed from erfc to keep
  // the digits of 1 - a.
  // The guess is poor far in the tail, so iterate to convergence.
  for (int iter = 0; iter < 50; ++iter) {
    const double residual =
        a < 0.5 ? std::erf(x) - a : (1.0 - a) - std::erfc(x);
    const double slope = 2.0 * std::numbers::inv_sqrtpi * std::exp(-x * x);
    const double step = residual / slope;
    x -= step / (1.0 + x * step);
    if (std::abs(step) <= 1e-16 * x) break;
  }
  return sign * x;
}

double normal_laplace_sf(double x, double sigma, double b) noexcept {
  if (b <= 0.0) return normal_sf(x / sigma);
  if (sigma <= 0.0) {
    return x >= 0.0 ? 0.5 * std::exp(-x / b) : 1.0 - 0.5 * std::exp(x / b);
  }
  if (x < 0.0) return 1.0 - normal_laplace_sf(-x, sigma, b);

  const double z = x / sigma;
  const double r = sigma / b;
  const double gauss = std::exp(-0.5 * z * z);
  const double upper = 0.5 * gauss * scaled_normal_sf(z + r);
  const double v = z - r;
  const double lower = v <= 0.0
                           ? 0.5 * gauss * scaled_normal_sf(-v)
                           : 0.5 * std::exp(0.5 * (v * v - z * z)) * normal_cdf(v);
  const double p = normal_sf(z) - upper + lower;
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

}  // namespace rpst
