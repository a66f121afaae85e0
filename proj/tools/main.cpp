#include <iostream>

#include "haarpencil/cli.hpp"

int main(int argc, char** argv) {
    return haarpencil::cli::run_cli(argc, argv, std::cout, std::cerr);
}
