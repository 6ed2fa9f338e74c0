#include <iostream>

#include "fcpool_cli/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return fcpool::cli::run(args, std::cout, std::cerr);
}
