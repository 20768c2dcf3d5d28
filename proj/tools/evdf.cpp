#include <iostream>

#include "evdf/cli.hpp"

int main(int argc, char** argv) {
    return evdf::run_cli(argc, argv, std::cout, std::cerr);
}
