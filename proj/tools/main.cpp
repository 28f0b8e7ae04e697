#include <iostream>
#include <string>
#include <vector>

#include "weft/cli.hpp"

int main(int argc, char **argv) {
    return weft::cli::run_command(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
