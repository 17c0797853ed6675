#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helixdt {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitClaimFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitDuplicatePoints = 4,
  kExitNot3d = 5,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics and timings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helixdt
