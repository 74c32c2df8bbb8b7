#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace limlaw::cli {

enum ExitCode : int {
  ok = 0,
  input_error = 2,
  budget_exhausted = 3,
  internal_error = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limlaw::cli
