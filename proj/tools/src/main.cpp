#include <iostream>

#include "hibound_tools/cli.hpp"

int main(int argc, char** argv) { return hibound::tools::run_cli(argc, argv, std::cout, std::cerr); }
