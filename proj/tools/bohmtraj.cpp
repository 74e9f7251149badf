#include <iostream>

#include "bohm/cli.hpp"

int main(int argc, char** argv)
{
    return bohm::cli::run(argc, argv, std::cout, std::cerr);
}
