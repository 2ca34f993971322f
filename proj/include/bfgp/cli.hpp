#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bfgp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kInconclusive = 3,
};

/// Runs one command line (without the program name). Writes exactly one JSON
/// document to `out`; human-readable notes go to `err` unless --quiet.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace bfgp::cli
