#pragma once

// Command-line front end. `run_cli` is the whole program minus argv
// handling, so it can be driven from tests.
//
// Exit codes: 0 pass, 1 check failed, 2 parse error (arguments or files),
// 3 shape error.

#include <ostream>
#include <string>
#include <vector>

namespace csframe::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kShapeError = 3,
};

/// Default tolerance after applying the CSFRAME_TOL environment override.
double default_tolerance();

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csframe::cli
