#include "mbrr/error.hpp"

namespace mbrr {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::field_mismatch: return "field mismatch";
    case ErrorCode::division_by_zero: return "division by zero";
    case ErrorCode::duplicate_point: return "duplicate point";
    case ErrorCode::singular_matrix: return "singular matrix";
    case ErrorCode::field_unavailable: return "field unavailable";
    case ErrorCode::parameter_divisibility: return "parameter divisibility";
    case ErrorCode::parameter_range: return "parameter range";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::insufficient_survivors: return "insufficient survivors";
    case ErrorCode::node_unavailable: return "node unavailable";
    case ErrorCode::repair_model: return "repair model violation";
    case ErrorCode::io: return "i/o";
    case ErrorCode::format: return "format";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

}  // namespace mbrr
