#include <iostream>

#include "gcode/cli.hpp"

int main(int argc, char** argv) { return gcode::run_cli(argc, argv, std::cout, std::cerr); }
