#include <iostream>

#include "c0forge/cli.hpp"

int main(int argc, char** argv) {
  return c0forge::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
