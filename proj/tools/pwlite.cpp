#include "pwlite/cli/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return pwlite::run_cli(argc, argv, std::cout, std::cerr); }
