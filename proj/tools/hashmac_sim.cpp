#include <iostream>

#include "hashmac/cli/commands.hpp"

int main(int argc, char** argv) { return hashmac::cli::main_entry(argc, argv, std::cout, std::cerr); }
