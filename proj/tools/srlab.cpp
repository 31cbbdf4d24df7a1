// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "srlab/cli.hpp"

int main(int argc, char** argv) { return srlab::run_cli(argc, argv, std::cout, std::cerr); }
