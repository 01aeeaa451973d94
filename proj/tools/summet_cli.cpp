#include <iostream>
#include <string>
#include <vector>

#include "summet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return summet::run_cli(args, std::cout, std::cerr);
}
