#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return noon_ent::cli::run(argc, argv, std::cout, std::cerr);
}
