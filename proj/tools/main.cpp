#include <iostream>
#include <string>
#include <vector>

#include "thinord/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thinord::run(std::move(args), std::cout, std::cerr);
}
