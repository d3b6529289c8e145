#include "qrsk/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qrsk::run_cli(argc, argv, std::cout, std::cerr);
}
