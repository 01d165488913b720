#include <iostream>

#include "gent/cli.hpp"

int main(int argc, char** argv) { return gent::cli::run(argc, argv, std::cout, std::cerr); }
