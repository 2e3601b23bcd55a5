#ifndef REDNUM_CLI_HPP
#define REDNUM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rednum {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitNotAsymptotic = 2,
  kExitGenericity = 3,
};

/// Runs one command line (without the program name) and returns its exit code.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rednum

#endif  // REDNUM_CLI_HPP
