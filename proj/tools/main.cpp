#include <iostream>

#include "protpref/cli.hpp"

int main(int argc, char** argv) {
  return protpref::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
