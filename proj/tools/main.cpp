// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return splatbench::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
