#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ncat/types.hpp"

namespace ncat {

/// Exit status for an error: 1 no solution or obstructed, 2 invalid input,
/// 3 numerical failure.
int exit_code(ErrorCode code);

/// Runs the command line (args excludes the program name). JSON results go
/// to `out` (or the -o file), diagnostics to `err` as JSON lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncat
