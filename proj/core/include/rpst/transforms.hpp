#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rpst {

enum class TransformFamily { arctan, log1p, power, identity, square, custom };

// A rank transformation psi: increasing, non-negative, psi(0) = 0.
//
// Every constructor checks those three properties on the integer grid
// 0..check_grid and throws Error(invalid_argument) when one fails.
class TransformSpec {
 public:
  static constexpr std::size_t kDefaultCheckGrid = 1024;

  static TransformSpec arctan();
  static TransformSpec log1p();
  static TransformSpec identity();
  static TransformSpec square();
  static TransformSpec power(double exponent);
  static TransformSpec sqrt() { return power(0.5); }

  // Arbitrary user transform. Mostly useful for tests and diagnostics.
  static TransformSpec custom(std::string name, std::function<double(double)> fn,
                              std::size_t check_grid = kDefaultCheckGrid);

  // Accepts "arctan", "log1p", "sqrt", "identity", "square", "power:<k>".
  static TransformSpec parse(std::string_view text);

  // The five transforms used throughout the simulation tables.
  static std::vector<TransformSpec> standard_family();

  double operator()(std::size_t r) const { return apply(r); }
  double apply(std::size_t r) const;

  TransformFamily family() const noexcept { return family_; }
  double exponent() const noexcept { return exponent_; }
  const std::string& name() const noexcept { return name_; }

 private:
  TransformSpec(TransformFamily family, double exponent, std::string name,
                std::function<double(double)> fn = {});
  void validate(std::size_t grid) const;

  TransformFamily family_;
  double exponent_ = 1.0;
  std::string name_;
  std::function<double(double)> fn_;
};

inline double apply(const TransformSpec& psi, std::size_t r) { return psi.apply(r); }

// psi(1), ..., psi(count).
std::vector<double> transformed_ranks(const TransformSpec& psi, std::size_t count);

// Compensated sums of psi(i) and psi(i)^2 for i = 1..count.
struct PsiSums {
  double sum = 0.0;
  double sum_squares = 0.0;
};
PsiSums psi_sums(const TransformSpec& psi, std::size_t count);

// n^-1 * sum_{i=1}^{n-Q} psi(i).
double psi_bar_q(const TransformSpec& psi, std::size_t n, std::size_t Q);

// mu_r / mu_2^{r/2} of the retained values psi(1), ..., psi(n-Q), central
// moments taken with divisor n-Q. A finite-n view of the moment condition
// behind null normality.
double condition_ratio(const TransformSpec& psi, std::size_t n, std::size_t Q, int r);

}  // namespace rpst
