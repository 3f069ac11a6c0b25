#include <iostream>

#include "klein/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return klein::run_cli(args, std::cout, std::cerr);
}
