#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adaptchain {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomainError = 1, kExitUsage = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace adaptchain
