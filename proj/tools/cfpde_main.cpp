#include <iostream>
#include <string>
#include <vector>

#include "cfpde/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cfpde::run_cli(args, std::cout, std::cerr);
}
