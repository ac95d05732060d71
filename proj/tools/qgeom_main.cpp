#include <iostream>
#include <string>
#include <vector>

#include "qgeom/cli.hpp"

int main(int argc, char** argv)
{
    return qgeom::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
