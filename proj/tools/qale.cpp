#include "qale/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qale::run_cli(argc, argv, std::cout, std::cerr); }
