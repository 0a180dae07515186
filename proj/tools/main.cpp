#include <iostream>

#include "cltl/cli.hpp"

int main(int argc, char** argv) {
  return cltl::cli_main(argc, argv, std::cout, std::cerr);
}
