#include <iostream>

#include "flatcover/cli.hpp"

int main(int argc, char** argv) {
  const flatcover::CommandResult r = flatcover::run_command({argv + 1, argv + argc});
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
