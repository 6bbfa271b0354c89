#include <iostream>

#include "designkit/cli.hpp"

int main(int argc, char** argv) { return designkit::run_command(argc, argv, std::cout, std::cerr); }
