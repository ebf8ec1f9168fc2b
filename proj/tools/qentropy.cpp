#include <iostream>

#include "qentropy/cli.hpp"

int main(int argc, char** argv) { return qentropy::cli::run(argc, argv, std::cout, std::cerr); }
