#include <iostream>

#include "dftauth/cli.hpp"

int main(int argc, char** argv) { return dftauth::cli::run(argc, argv, std::cout, std::cerr); }
