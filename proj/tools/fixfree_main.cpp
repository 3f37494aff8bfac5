#include <iostream>

#include "fixfree/cli.hpp"

int main(int argc, char** argv) {
  return fixfree::cli::run_main(argc, argv, std::cout, std::cerr);
}
