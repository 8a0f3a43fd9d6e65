#include "stresskit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return stresskit::cli::run(argc, argv, std::cout, std::cerr); }
