#include "cfeas/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cfeas::cli::run(argc, argv, std::cout, std::cerr);
}
