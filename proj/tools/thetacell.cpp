#include <iostream>

#include "thetacell/cli.hpp"

int main(int argc, char** argv) { return thetacell::run_cli(argc, argv, std::cout, std::cerr); }
