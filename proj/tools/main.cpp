#include <iostream>
#include <string>
#include <vector>

#include "rme/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return rme::cli::run(std::vector<std::string>(argv, argv + argc), std::cout,
                       std::cerr);
}
