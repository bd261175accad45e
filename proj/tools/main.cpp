// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) { return kahlerstat::cli::run(argc, argv, std::cout, std::cerr); }
