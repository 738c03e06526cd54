#include <iostream>
#include <string>
#include <vector>

#include "accelppa/cli.hpp"

int main(int argc, char** argv) {
    return accelppa::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
