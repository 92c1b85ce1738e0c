#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace impsel {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // constraint or verification failure
  kExitBudget = 2,      // budget exceeded or guarantee not applicable
  kExitUsage = 3,       // usage, parse or validation error
};

/// Runs the command line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace impsel
