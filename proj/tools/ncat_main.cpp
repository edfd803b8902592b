#include <iostream>

#include "ncat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncat::run(args, std::cout, std::cerr);
}
