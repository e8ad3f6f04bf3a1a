#include <iostream>

#include "ddal/cli.hpp"

int main(int argc, char** argv) {
  return ddal::run_cli(argc, argv, std::cout, std::cerr);
}
