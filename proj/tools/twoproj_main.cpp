#include "twoproj/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return twoproj::run_cli(argc, argv, std::cout, std::cerr); }
