#include <iostream>
#include <string>
#include <vector>

#include "unifex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unifex::cli::run(args, std::cout, std::cerr);
}
