#include <iostream>
#include <string>
#include <vector>

#include "rwstream/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rwstream::cli_main(args, std::cout, std::cerr);
}
