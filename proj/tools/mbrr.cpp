#include <iostream>

#include "mbrr/cli.hpp"

int main(int argc, char** argv) { return mbrr::cli::run(argc, argv, std::cout, std::cerr); }
