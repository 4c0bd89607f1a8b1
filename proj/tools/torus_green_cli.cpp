// torus_green_cli.cpp

#include <iostream>

#include "torus_green/cli.hpp"

int main(int argc, char** argv) { return tg::run(argc, argv, std::cout, std::cerr); }
