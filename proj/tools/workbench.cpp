#include <iostream>

#include "integra/cli/workbench.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return integra::cli::run(args, std::cout, std::cerr);
}
