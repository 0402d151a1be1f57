#include "fdside/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return fdside::cli::run(argc, argv, std::cout, std::cerr);
}
