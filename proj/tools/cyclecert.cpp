#include <iostream>

#include "cyclecert/cli.hpp"

int main(int argc, char** argv) { return cyclecert::cli::run(argc, argv, std::cout, std::cerr); }
