#include "bfgp/error.hpp"

namespace bfgp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::unsupported_family: return "unsupported-family";
    case ErrorCode::not_connected: return "not-connected";
    case ErrorCode::invalid_cycle: return "invalid-cycle";
    case ErrorCode::invalid_path: return "invalid-path";
    case ErrorCode::invalid_cover: return "invalid-cover";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::unverified_cover: return "unverified-cover";
    case ErrorCode::too_large: return "refused-too-large";
    case ErrorCode::inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace bfgp
