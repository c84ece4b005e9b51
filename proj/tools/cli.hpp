#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsort::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (args excludes the program name). Results go to
/// out; stats and diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zsort::cli
