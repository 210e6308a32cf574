#include <iostream>

#include "volswap/cli.hpp"

int main(int argc, char** argv) { return volswap::cli::run(argc, argv, std::cout, std::cerr); }
