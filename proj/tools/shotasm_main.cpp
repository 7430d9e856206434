#include <iostream>

#include "shotasm/cli.hpp"

int main(int argc, char** argv) {
    return shotasm::cli::run(argc, argv, std::cout, std::cerr);
}
