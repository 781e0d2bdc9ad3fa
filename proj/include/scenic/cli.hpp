#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scenic::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kCap = 4 };

/// Runs one command line (args[0] is the program name). Artifacts go to
/// --out or to `out`; diagnostics go to `err`.
int run_pipeline(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scenic::cli
