#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fraclog::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kValidationFailed = 1, kBadArguments = 2, kAccuracyFailure = 3 };

/// Entry point of the `fraclog` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclog::cli
