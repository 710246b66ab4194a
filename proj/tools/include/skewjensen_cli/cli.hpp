#pragma once

#include <iosfwd>

namespace skewjensen::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kUserError = 1,
  kNumericalFailure = 2,
};

/// Runs one CLI invocation; `argv[0]` is the program name. Output files are
/// written directly, everything else goes to `out` / `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skewjensen::cli
