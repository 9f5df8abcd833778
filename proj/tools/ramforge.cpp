#include <iostream>

#include "ramforge/cli.hpp"

int main(int argc, char** argv) { return ramforge::run(argc, argv, std::cout, std::cerr); }
