#include <iostream>

#include "hypergame/cli.hpp"

int main(int argc, char** argv) {
  return hypergame::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
