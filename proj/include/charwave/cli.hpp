#pragma once

#include <ostream>

namespace charwave {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitHorizon = 3,
  kExitConvergence = 4,
};

// Entry point of the command-line tool; tables go to `out` unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace charwave
