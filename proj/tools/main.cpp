#include <iostream>

#include "tristeer/cli.hpp"

int main(int argc, char** argv) {
  return tristeer::cli::run(argc, argv, std::cout, std::cerr);
}
