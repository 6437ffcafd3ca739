#include <iostream>

#include "domainwall/cli.hpp"

int main(int argc, char** argv) {
  return domainwall::cli::main(argc, argv, std::cout, std::cerr);
}
