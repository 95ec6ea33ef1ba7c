#include <iostream>
#include <string>
#include <vector>

#include "nonext/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return nonext::cli::run(args, std::cout, std::cerr);
}
