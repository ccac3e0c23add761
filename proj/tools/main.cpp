#include <iostream>

#include "wlr/cli.hpp"

int main(int argc, char** argv) { return wlr::cli::run(argc, argv, std::cout, std::cerr); }
