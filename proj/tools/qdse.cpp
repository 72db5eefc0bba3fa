#include <iostream>

#include "qdse/cli.hpp"

int main(int argc, char** argv) {
  return qdse::run(argc, argv, std::cout, std::cerr);
}
