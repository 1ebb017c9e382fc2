#include <iostream>

#include "apnforge/cli.hpp"

int main(int argc, char** argv) {
  return apnforge::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
