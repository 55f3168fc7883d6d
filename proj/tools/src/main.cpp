#include <iostream>
#include <string>
#include <vector>

#include "schemeforge_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return schemeforge::cli::run(args, std::cout, std::cerr);
}
