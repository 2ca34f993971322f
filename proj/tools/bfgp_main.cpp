#include <iostream>
#include <string>
#include <vector>

#include "bfgp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bfgp::cli::run(args, std::cout, std::cerr);
}
