#include <iostream>
#include <string>
#include <vector>

#include "scenic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return scenic::cli::run_pipeline(args, std::cout, std::cerr);
}
