#ifndef RELAXREV_CLI_HPP_
#define RELAXREV_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace relaxrev {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,        // success / verdict holds
  kExitNegative = 1,  // unsatisfiable, not entailed, postulate fails
  kExitUsage = 2,     // usage, parse or file error
  kExitBudget = 3,    // reasoner / enumeration / revision budget exhausted
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaxrev

#endif  // RELAXREV_CLI_HPP_
