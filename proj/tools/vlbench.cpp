#include <iostream>

#include "vlstore/cli.hpp"

int main(int argc, char** argv) {
  return vlstore::run_cli(argc, argv, std::cout, std::cerr);
}
