#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracsum::cli {

enum ExitCode : int { kOk = 0, kEvalFailure = 1, kUsage = 2 };

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracsum::cli
