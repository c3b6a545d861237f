#include "qtune/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return qtune::cli::run(argc, argv, std::cout, std::cerr);
}
