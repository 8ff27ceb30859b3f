#include <iostream>

#include "cascade/cli.hpp"

int main(int argc, char** argv) { return cascade::cli::main_entry(argc, argv, std::cout, std::cerr); }
