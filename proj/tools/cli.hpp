#pragma once

#include <ostream>

namespace curvedpipe::cli {

/// Exit codes of the driver.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfigError = 2,
  kNotConverged = 3,
  kLinearSolverError = 4,
};

/// Runs the driver with the given arguments (argv[0] is the program name).
/// Reports go to `out`; `error: <category>: <detail>` lines go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvedpipe::cli
