#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace microfor::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kUserError = 2, kSkipped = 3 };

/// Runs `microfor <subcommand> [flags]`. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace microfor::cli
