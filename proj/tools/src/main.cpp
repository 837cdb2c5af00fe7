#include <iostream>

#include "bellman_cli/app.hpp"

int main(int argc, char** argv) {
  return bellman::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
