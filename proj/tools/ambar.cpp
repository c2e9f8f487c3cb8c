#include <iostream>

#include "ambar/cli.hpp"

int main(int argc, char** argv) { return ambar::cli::main(argc, argv, std::cout, std::cerr); }
