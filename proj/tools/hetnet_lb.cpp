#include <iostream>

#include "hetnet/cli.hpp"

int main(int argc, char** argv) { return hetnet::run_cli(argc, argv, std::cout, std::cerr); }
