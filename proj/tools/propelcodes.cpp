#include "propel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return propel::cli::run(argc, argv, std::cout, std::cerr); }
