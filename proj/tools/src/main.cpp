#include <iostream>

#include "qfdensity/cli.hpp"

int main(int argc, char** argv) { return qfd::cli::cli_dispatch(argc, argv, std::cout, std::cerr); }
