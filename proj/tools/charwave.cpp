#include <iostream>

#include "charwave/cli.hpp"

int main(int argc, char** argv) { return charwave::run_cli(argc, argv, std::cout, std::cerr); }
