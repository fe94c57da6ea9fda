// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "agentdock/cli.hpp"

int main(int argc, char** argv) {
  return agentdock::cli_main(argc, argv, std::cout, std::cerr);
}
