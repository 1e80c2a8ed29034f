#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bvtp::cli::run(argc, argv, std::cout, std::cerr); }
