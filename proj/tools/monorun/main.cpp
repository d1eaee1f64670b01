#include <iostream>

#include "monorun/cli/app.hpp"

int main(int argc, char** argv) { return monorun::cli::run(argc, argv, std::cout, std::cerr); }
