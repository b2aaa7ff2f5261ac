#include <iostream>
#include <string>
#include <vector>

#include "perdyn_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perdyn::cli::run(args, std::cout, std::cerr);
}
