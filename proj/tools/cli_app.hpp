#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcalc::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2 };

// Runs one command. `args` excludes the program name. Reports go to `out`
// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcalc::cli
