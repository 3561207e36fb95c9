#include <iostream>
#include <string>
#include <vector>

#include "supercrit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return supercrit::run_cli(args, std::cout, std::cerr);
}
