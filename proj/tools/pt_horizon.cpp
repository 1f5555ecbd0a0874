#include <iostream>
#include <string>
#include <vector>

#include "pt_horizon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pt_horizon::cli::run(args, std::cout, std::cerr);
}
