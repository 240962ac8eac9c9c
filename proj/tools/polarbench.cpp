#include <iostream>

#include "polarbench/cli.hpp"

int main(int argc, char** argv) {
  return polarbench::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
