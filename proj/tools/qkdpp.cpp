#include <iostream>

#include "qkdpp/cli/commands.hpp"

int main(int argc, char** argv) { return qkdpp::cli::run_cli(argc, argv, std::cout, std::cerr); }
