#include <iostream>

#include "qhcodes/cli.hpp"

int main(int argc, char** argv) { return qh::cli::run(argc, argv, std::cout, std::cerr); }
