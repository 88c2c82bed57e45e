#include <iostream>
#include <string>
#include <vector>

#include "bacp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bacp::run_cli(args, std::cout, std::cerr);
}
