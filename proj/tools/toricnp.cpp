#include <iostream>

#include "toricnp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toricnp::run_command(args, std::cout, std::cerr);
}
