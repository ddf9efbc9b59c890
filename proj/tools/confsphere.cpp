#include <iostream>

#include "confsphere/cli/commands.hpp"

int main(int argc, char** argv) { return confsphere::cli::run(argc, argv, std::cout, std::cerr); }
