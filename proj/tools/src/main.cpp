#include <iostream>

#include "nilcps/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nilcps::cli::run(args, std::cout, std::cerr);
}
