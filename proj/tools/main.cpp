#include <iostream>

#include "agilepilot/cli.hpp"

int main(int argc, char** argv) {
    return agilepilot::run_cli(argc, argv, std::cout, std::cerr);
}
