#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hydromm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kIo = 3 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hydromm::cli
