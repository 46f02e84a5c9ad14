#include <iostream>
#include <string>
#include <vector>

#include "relaxrev/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return relaxrev::run_cli(args, std::cout, std::cerr);
}
