#include <iostream>

#include "latknot/cli.hpp"

int main(int argc, char** argv) { return latknot::cli::run(argc, argv, std::cout, std::cerr); }
