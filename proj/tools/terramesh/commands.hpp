#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace terramesh::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,  // bad flags or parameters, unknown file extension
  kIoError = 2,     // missing/unreadable/unwritable files and malformed file contents
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace terramesh::cli
