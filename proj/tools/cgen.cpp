#include <iostream>
#include <string>
#include <vector>

#include "cgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cgen::cli::run(args, std::cout, std::cerr);
}
