// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return xsplanes::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
