#include <iostream>
#include <string>
#include <vector>

#include "nmetric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nmetric::cli::run(args, std::cout, std::cerr);
}
