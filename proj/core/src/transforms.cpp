#include "rpst/transforms.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "rpst/error.hpp"
#include "rpst/numeric.hpp"

namespace rpst {

namespace {

std::string format_exponent(double k) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), k);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

TransformSpec::TransformSpec(TransformFamily family, double exponent, std::string name,
                             std::function<double(double)> fn)
    : family_(family), exponent_(exponent), name_(std::move(name)), fn_(std::move(fn)) {}

TransformSpec TransformSpec::arctan() {
  TransformSpec t(TransformFamily::arctan, 1.0, "arctan");
  t.validate(kDefaultCheckGrid);
  return t;
}

TransformSpec TransformSpec::log1p() {
  TransformSpec t(TransformFamily::log1p, 1.0, "log1p");
  t.validate(kDefaultCheckGrid);
  return t;
}

TransformSpec TransformSpec::identity() {
  TransformSpec t(TransformFamily::identity, 1.0, "identity");
  t.validate(kDefaultCheckGrid);
  return t;
}

TransformSpec TransformSpec::square() {
  TransformSpec t(TransformFamily::square, 2.0, "square");
  t.validate(kDefaultCheckGrid);
  return t;
}

TransformSpec TransformSpec::power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw Error(ErrorCode::invalid_argument, "power transform needs an exponent k > 0");
  }
  std::string name = exponent == 0.5 ? "sqrt" : "power:" + format_exponent(exponent);
  TransformSpec t(TransformFamily::power, exponent, std::move(name));
  t.validate(kDefaultCheckGrid);
  return t;
}

TransformSpec TransformSpec::custom(std::string name, std::function<double(double)> fn,
                                    std::size_t check_grid) {
  if (!fn) throw Error(ErrorCode::invalid_argument, "custom transform needs a callable");
  TransformSpec t(TransformFamily::custom, 1.0, std::move(name), std::move(fn));
  t.validate(check_grid);
  return t;
}

TransformSpec TransformSpec::parse(std::string_view text) {
  if (text == "arctan") return arctan();
  if (text == "log1p") return log1p();
  if (text == "sqrt") return sqrt();
  if (text == "identity") return identity();
  if (text == "square") return square();
  constexpr std::string_view prefix = "power:";
  if (text.starts_with(prefix)) {
    const std::string_view digits = text.substr(prefix.size());
    double k = 0.0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "malformed power transform '" + std::string(text) + "'");
    }
    return power(k);
  }
  throw Error(ErrorCode::invalid_argument, "unknown transform '" + std::string(text) +
                                               "' (expected arctan, log1p, sqrt, identity, "
                                               "square or power:<k>)");
}

std::vector<TransformSpec> TransformSpec::standard_family() {
  return {arctan(), log1p(), sqrt(), identity(), square()};
}

double TransformSpec::apply(std::size_t r) const {
  const double x = static_cast<double>(r);
  switch (family_) {
    case TransformFamily::arctan: return std::atan(x);
    case TransformFamily::log1p: return std::log1p(x);
    case TransformFamily::identity: return x;
    case TransformFamily::square: return x * x;
    case TransformFamily::power:
      if (exponent_ == 0.5) return std::sqrt(x);
      if (exponent_ == 1.0) return x;
      if (exponent_ == 2.0) return x * x;
      return std::pow(x, exponent_);
    case TransformFamily::custom: return fn_(x);
  }
  return x;
}

void TransformSpec::validate(std::size_t grid) const {
  const double at_zero = apply(0);
  if (at_zero != 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "transform '" + name_ + "' must satisfy psi(0) = 0, got " +
                    format_exponent(at_zero));
  }
  double previous = at_zero;
  for (std::size_t r = 1; r <= grid; ++r) {
    const double value = apply(r);
    if (!(value > previous)) {
      throw Error(ErrorCode::invalid_argument,
                  "transform '" + name_ + "' is not strictly increasing at r = " +
                      std::to_string(r));
    }
    previous = value;
  }
}

std::vector<double> transformed_ranks(const TransformSpec& psi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = psi.apply(i + 1);
  return out;
}

PsiSums psi_sums(const TransformSpec& psi, std::size_t count) {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (std::size_t i = 1; i <= count; ++i) {
    const double v = psi.apply(i);
    sum.add(v);
    sum_sq.add(v * v);
  }
  return {sum.value(), sum_sq.value()};
}

double psi_bar_q(const TransformSpec& psi, std::size_t n, std::size_t Q) {
  if (Q > n) throw Error(ErrorCode::invalid_argument, "Q must not exceed n");
  if (n == 0) return 0.0;
  return psi_sums(psi, n - Q).sum / static_cast<double>(n);
}

double condition_ratio(const TransformSpec& psi, std::size_t n, std::size_t Q, int r) {
  if (Q > n || n - Q < 2) {
    throw Error(ErrorCode::invalid_argument, "condition_ratio needs n - Q >= 2");
  }
  if (r <= 2) throw Error(ErrorCode::invalid_argument, "condition_ratio needs r > 2");
  const std::vector<double> values = transformed_ranks(psi, n - Q);
  const double m = static_cast<double>(values.size());
  const double mean = compensated_sum(values) / m;
  CompensatedSum second;
  CompensatedSum higher;
  for (double v : values) {
    const double d = v - mean;
    second.add(d * d);
    higher.add(std::pow(d, r));
  }
  const double mu2 = second.value() / m;
  if (!(mu2 > 0.0)) {
    throw Error(ErrorCode::degenerate_sequence, "transformed ranks have zero variance");
  }
  return (higher.value() / m) / std::pow(mu2, 0.5 * r);
}

}  // namespace rpst
