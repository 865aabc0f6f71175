#include "polsar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return polsar::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
