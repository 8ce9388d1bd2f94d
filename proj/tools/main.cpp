#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return ratio_bounds::cli::run(argc, argv, std::cout, std::cerr); }
