#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return fixtime::cli::cli_main(argc, argv, std::cout, std::cerr); }
