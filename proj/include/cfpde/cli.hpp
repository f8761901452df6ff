#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfpde {

/// Process exit codes of the command-line driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitSolver = 3,
    kExitCheckFailed = 4,
};

/// Runs the driver on `args` (args[0] is the program name). Subcommands:
/// solve, terms, adomian, check, compare.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfpde
