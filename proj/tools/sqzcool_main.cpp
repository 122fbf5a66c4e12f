#include <iostream>
#include <string>
#include <vector>

#include "sqzcool/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sqzcool::run(args, std::cout, std::cerr);
}
