#include <iostream>
#include <string>
#include <vector>

#include "hyperkp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperkp::run(args, std::cout, std::cerr);
}
