#include "torusx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return torusx::cli_main(argc, argv, std::cout, std::cerr); }
