#include <iostream>
#include <string>
#include <vector>

#include "mqt/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mqt::cli::run(args, std::cout, std::cerr);
}
