#include <iostream>

#include "altroute/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return altroute::cli::run_cli(args, std::cout, std::cerr);
}
