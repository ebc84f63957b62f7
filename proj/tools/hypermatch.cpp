#include <iostream>
#include <vector>

#include "hypermatch/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hypermatch::cli::dispatch(args, std::cout, std::cerr);
}
