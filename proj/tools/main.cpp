#include <iostream>
#include <string>
#include <vector>

#include "chain_rivalry/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chain_rivalry::run_cli(args, std::cout, std::cerr);
}
