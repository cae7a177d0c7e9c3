// main.cpp: command-line entry point for the coherence-trapping toolkit

#include <iostream>
#include <string>
#include <vector>

#include "cohtrap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cohtrap::cli::run(args, std::cout, std::cerr);
}
