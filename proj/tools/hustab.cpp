#include <iostream>
#include <string>
#include <vector>

#include "hu/cli.hpp"

int main(int argc, char** argv) {
  return hu::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
