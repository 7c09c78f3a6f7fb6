#include <iostream>

#include "forcing/cli/run.hpp"

int main(int argc, char** argv) {
  return forcing::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
