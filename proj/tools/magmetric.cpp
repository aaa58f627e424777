#include <iostream>

#include "magmetric/cli/app.hpp"

int main(int argc, char** argv) { return magmetric::cli::run(argc, argv, std::cout, std::cerr); }
