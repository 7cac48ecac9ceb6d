#include <iostream>

#include "evenodd/cli.hpp"

int main(int argc, char** argv) {
  return evenodd::cli::run(argc, argv, std::cout, std::cerr);
}
