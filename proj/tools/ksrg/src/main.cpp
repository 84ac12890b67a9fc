#include <iostream>
#include <string>
#include <vector>

#include "ksrg_cli/app.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return ksrg::cli::main_entry(args, std::cout, std::cerr);
}
