#include <iostream>

#include "vacbrown/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vacbrown::cli::run(args, std::cout, std::cerr);
}
