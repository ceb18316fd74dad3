#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grand::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2 };

/// Runs one command line (without the program name). The report goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grand::cli
