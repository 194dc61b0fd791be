#include <iostream>

#include "casimir/cli.hpp"

int main(int argc, char** argv) { return casimir::cli::main(argc, argv, std::cout, std::cerr); }
