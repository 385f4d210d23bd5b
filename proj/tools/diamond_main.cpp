#include "diamond/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return diamond::run_cli(argc, argv, std::cout, std::cerr);
}
