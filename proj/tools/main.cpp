#include <iostream>
#include <string>
#include <vector>

#include "aggpack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aggpack::cli::run(args, std::cout, std::cerr);
}
