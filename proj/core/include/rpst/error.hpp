#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rpst {

enum class ErrorCode {
  invalid_argument,
  ties_without_jitter,
  jitter_too_large,
  zero_difference,
  degenerate_sequence,
  degenerate_variance,
  q_too_large,
  alpha_out_of_range,
  too_large,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rpst
