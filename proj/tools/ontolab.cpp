#include <iostream>
#include <string>
#include <vector>

#include "ontolab/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return ontolab::cli::run(args, std::cout, std::cerr);
}
