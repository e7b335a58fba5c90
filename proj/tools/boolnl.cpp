#include <iostream>

#include "boolnl/cli.hpp"

int main(int argc, char** argv) { return boolnl::cli::run(argc, argv, std::cout, std::cerr); }
