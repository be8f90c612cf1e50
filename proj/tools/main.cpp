#include "mwave/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mwave::cli::run(argc, argv, std::cout, std::cerr); }
