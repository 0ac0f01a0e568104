#include <iostream>

#include "flipin/tools/cli.hpp"

int main(int argc, char** argv) { return flipin::tools::run_cli(argc, argv, std::cout, std::cerr); }
