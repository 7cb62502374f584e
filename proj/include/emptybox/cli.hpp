// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_CLI_HPP
#define EMPTYBOX_CLI_HPP

#include <string>
#include <vector>

namespace emptybox {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 scale-guard refusal.
struct CliResult {
  int exit_code = 0;
  std::string output;  // report (JSON or text) on success, help text on -h
  std::string error;   // diagnostic for nonzero exit codes
};

// Runs one subcommand. args excludes the program name.
CliResult dispatch(const std::vector<std::string>& args);

// main() adapter: dispatch plus printing.
int run_cli(int argc, char** argv);

}  // namespace emptybox

#endif  // EMPTYBOX_CLI_HPP
