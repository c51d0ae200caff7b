#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pilp::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kUnbounded = 3,
  kNoFit = 4,
  kIncompatibleForm = 5,
};

/// Structured output schema tag.
inline constexpr std::string_view kSchema = "pilp-cli/1";

/// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace pilp::cli
