#include <iostream>
#include <string>
#include <vector>

#include "rscert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rscert::cli::run(args, std::cout, std::cerr);
}
