#include <iostream>

#include "skewcomp/cli.hpp"

int main(int argc, char** argv)
{
    return skewcomp::cli::run(argc, argv, std::cout, std::cerr);
}
