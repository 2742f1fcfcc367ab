#include <iostream>

#include "kwcalc/cli.hpp"

int main(int argc, char** argv) {
    return kw::main_cli(argc, argv, std::cin, std::cout, std::cerr);
}
