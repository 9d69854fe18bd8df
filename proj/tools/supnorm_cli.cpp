#include <iostream>

#include "supnorm/cli.hpp"

int main(int argc, char** argv)
{
    return supnorm::run_cli(argc, argv, std::cout, std::cerr);
}
