// mtsc: metamorphic testing of smart contracts
// Copyright 2026 The mtsc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtsc/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return mtsc::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
