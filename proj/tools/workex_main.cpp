#include <iostream>
#include <string>
#include <vector>

#include "workex/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return workex::run_cli(args, std::cout, std::cerr);
}
