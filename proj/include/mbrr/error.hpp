#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbrr {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  dimension_mismatch,
  field_mismatch,
  division_by_zero,
  duplicate_point,
  singular_matrix,
  field_unavailable,
  parameter_divisibility,
  parameter_range,
  integrity,
  insufficient_survivors,
  node_unavailable,
  repair_model,
  io,
  format,
  parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported as an Error carrying a code, so callers
// can branch on the category while the message keeps the specific diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mbrr
