#include <iostream>

#include "subspace/cli.hpp"

int main(int argc, char** argv) { return subspace::cli::run(argc, argv, std::cout, std::cerr); }
