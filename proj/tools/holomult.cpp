// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "holomult/cli.hpp"

int main(int argc, char** argv) { return holomult::cli::main_entry(argc, argv, std::cout, std::cerr); }
