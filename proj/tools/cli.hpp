#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spbvp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNoConvergence = 3,
  kPropertyFailure = 4,
};

/// Default output directory for `solve` when --output is not given.
inline constexpr const char* kOutputDirEnv = "SPBVP_OUTPUT_DIR";

/// Accepts "2^-10" style powers and plain decimals.
double parse_number(const std::string& text);

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spbvp::cli
