#include <iostream>

#include "mmc_cli/commands.hpp"

int main(int argc, char** argv) { return mmc::cli::run_cli(argc, argv, std::cout, std::cerr); }
