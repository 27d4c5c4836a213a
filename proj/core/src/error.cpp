#include "rpst/error.hpp"

namespace rpst {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::ties_without_jitter: return "TiesWithoutJitter";
    case ErrorCode::jitter_too_large: return "JitterTooLarge";
    case ErrorCode::zero_difference: return "ZeroDifference";
    case ErrorCode::degenerate_sequence: return "DegenerateSequence";
    case ErrorCode::degenerate_variance: return "DegenerateVariance";
    case ErrorCode::q_too_large: return "QTooLarge";
    case ErrorCode::alpha_out_of_range: return "AlphaOutOfRange";
    case ErrorCode::too_large: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace rpst
