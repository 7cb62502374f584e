// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// hard failure. The same checks back the CLI's `verify` subcommand.

#include <cstring>
#include <iostream>

#include "emptybox/verify.hpp"

int main(int argc, char** argv) {
  emptybox::VerifyOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      options.threads = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--no-scaling-note") == 0) {
      options.scaling_note = false;
    }
  }
  return emptybox::print_acceptance(std::cout, options) == 0 ? 0 : 1;
}
