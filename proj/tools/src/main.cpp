#include <iostream>

#include "skewjensen_cli/cli.hpp"

int main(int argc, char** argv) {
  return skewjensen::cli::run(argc, argv, std::cout, std::cerr);
}
