#pragma once

#include <stdexcept>
#include <string>

namespace bfgp {

enum class ErrorCode {
  invalid_parameter,
  unsupported_family,
  not_connected,
  invalid_cycle,
  invalid_path,
  invalid_cover,
  parse_error,
  unverified_cover,
  too_large,
  inconclusive,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bfgp
