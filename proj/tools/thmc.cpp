#include <iostream>
#include <string>
#include <vector>

#include "thmc/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return thmc::cli::run(args, std::cout, std::cerr);
}
