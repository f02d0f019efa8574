#include <iostream>
#include <string>
#include <vector>

#include "gossipsim_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gossip::cli::run(args, std::cout, std::cerr);
}
