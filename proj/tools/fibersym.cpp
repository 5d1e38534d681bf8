#include "fibersym/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return fibersym::cli::run(argc, argv, std::cout, std::cerr);
}
