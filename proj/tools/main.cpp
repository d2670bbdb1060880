#include <iostream>

#include "locirr/cli.hpp"

int main(int argc, char** argv) { return locirr::run_cli(argc, argv, std::cout, std::cerr); }
