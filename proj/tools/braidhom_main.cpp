#include <iostream>
#include <string>
#include <vector>

#include "braidhom/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    braidhom::CliResult r = braidhom::run_cli(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
