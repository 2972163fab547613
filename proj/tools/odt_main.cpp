#include <iostream>

#include "odt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return odt::cli::run(args, std::cout, std::cerr);
}
