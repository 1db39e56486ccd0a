#include <iostream>
#include <string>
#include <vector>

#include "hvm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hvm::cli::run(args, std::cout, std::cerr);
}
