#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stackvol {

/// Exit codes.
enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kInput = 3 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stackvol
