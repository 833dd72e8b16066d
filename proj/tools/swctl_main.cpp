#include <iostream>

#include "swctl/cli.hpp"

int main(int argc, char** argv) {
  return swctl::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
