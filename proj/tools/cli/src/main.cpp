#include <iostream>
#include <string>
#include <vector>

#include "cbfl/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cbfl::cli::run_cli(args, std::cout, std::cerr);
}
