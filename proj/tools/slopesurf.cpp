#include <iostream>

#include "slope/cli.hpp"

int main(int argc, char** argv) { return slope::run_cli(argc, argv, std::cout, std::cerr); }
