#include <iostream>
#include <string>
#include <vector>

#include "locinv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return locinv::run_cli(args, std::cout, std::cerr);
}
