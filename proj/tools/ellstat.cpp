#include <iostream>
#include <string>
#include <vector>

#include "ellstat/cli.hpp"

int main(int argc, char** argv) {
  return ellstat::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
