#include <iostream>
#include <string>
#include <vector>

#include "bosesteer/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bosesteer::cli::run(args, std::cout, std::cerr);
}
