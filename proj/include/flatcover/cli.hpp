#pragma once

// Command dispatch shared by the flatcover executable, the tests and the
// Python module. Exit codes: 0 every verdict holds, 1 some verdict fails,
// 2 input, cap or hypothesis error.

#include <string>
#include <vector>

namespace flatcover {

struct CommandResult {
  std::string out;
  std::string err;
  int exit_code = 0;
};

/// `args` excludes the program name, e.g. {"holonomy", "wedge.json"}.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace flatcover
