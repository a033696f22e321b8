#include <iostream>

#include "sp4/cli/run.hpp"

int main(int argc, char** argv) { return sp4::cli::run(argc, argv, std::cout, std::cerr); }
