#include <iostream>

#include "arith/cli.hpp"

int main(int argc, char** argv) { return arith::cli::run(argc, argv, std::cout, std::cerr); }
