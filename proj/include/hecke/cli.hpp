#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hecke::cli {

enum ExitCode : int { ExitOk = 0, ExitUsage = 2, ExitDiverged = 3, ExitCheckFailed = 4 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecke::cli
