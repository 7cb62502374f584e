// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_VERIFY_HPP
#define EMPTYBOX_VERIFY_HPP

#include <ostream>
#include <string>
#include <vector>

namespace emptybox {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool hard = true;  // soft checks are reported but never fail the suite
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  int threads = 0;           // 0: use hardware concurrency
  bool scaling_note = true;  // run the soft near-linear scaling measurement
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

// Prints one PASS/FAIL line per criterion; returns the hard-failure count.
int print_acceptance(std::ostream& out, const VerifyOptions& options = {});

}  // namespace emptybox

#endif  // EMPTYBOX_VERIFY_HPP
