#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apnforge {

/// Exit statuses of the command-line front end.
enum ExitStatus : int { kExitOk = 0, kExitInternal = 1, kExitUser = 2, kExitTimeout = 3 };

/// Runs one command line (args excludes the program name). Reports go to
/// `out`; a one-line diagnostic goes to `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apnforge
