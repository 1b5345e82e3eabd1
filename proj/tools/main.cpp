#include <iostream>

#include "jetode/cli.hpp"

int main(int argc, char** argv) { return jetode::run_cli(argc, argv, std::cout, std::cerr); }
