// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/cli.hpp"

int main(int argc, char** argv) { return emptybox::run_cli(argc, argv); }
