#include "pwt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pwt::run_cli(argc, argv, std::cout, std::cerr); }
