#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracgn {

enum class ErrorCode {
  invalid_argument,
  support_overflow,
  unsupported_dilation,
  grid_too_coarse,
  band_out_of_range,
  epsilon_under_resolved,
  degenerate_mollifier,
  invalid_epsilon,
  not_band_limited,
  moment_order_too_low,
  exponent_mismatch,
  missing_exponent,
  condition_violated,
  unresolvable_at_scale,
  unknown_case,
  schema_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::support_overflow: return "support-overflow";
    case ErrorCode::unsupported_dilation: return "unsupported-dilation";
    case ErrorCode::grid_too_coarse: return "grid-too-coarse";
    case ErrorCode::band_out_of_range: return "band-out-of-range";
    case ErrorCode::epsilon_under_resolved: return "epsilon-under-resolved";
    case ErrorCode::degenerate_mollifier: return "degenerate-mollifier";
    case ErrorCode::invalid_epsilon: return "invalid-epsilon";
    case ErrorCode::not_band_limited: return "not-band-limited";
    case ErrorCode::moment_order_too_low: return "moment-order-too-low";
    case ErrorCode::exponent_mismatch: return "exponent-mismatch";
    case ErrorCode::missing_exponent: return "missing-exponent";
    case ErrorCode::condition_violated: return "condition-violated";
    case ErrorCode::unresolvable_at_scale: return "unresolvable-at-scale";
    case ErrorCode::unknown_case: return "unknown-case";
    case ErrorCode::schema_error: return "schema-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message starts with the code's string form so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline void require(bool cond, ErrorCode code, const std::string& detail) {
  if (!cond) throw Error(code, detail);
}

}  // namespace fracgn
