#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lvfb/error.hpp"

namespace lvfb {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitInconclusive = 4,
};

int exit_code_for(ErrorCode code);

/// Full command line without the program name, e.g. {"simulate", "--mu", "8"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lvfb
