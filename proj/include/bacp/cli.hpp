#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bacp {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitSolved = 0,      // Optimal / Sat / feasible solution
  kExitNoSolution = 1,  // Infeasible / Unsat / violations found
  kExitIncomplete = 2,  // a node or time limit fired first
  kExitInputError = 3,  // unreadable or malformed input, bad arguments
};

/// Entry point of the `bacp` tool: solve, check, oracle and gen subcommands.
/// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bacp
