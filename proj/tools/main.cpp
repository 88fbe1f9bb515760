#include <iostream>

#include "twopart/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return twopart::cli::run(args, std::cout, std::cerr);
}
