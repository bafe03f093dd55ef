#include "microfor/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return microfor::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
