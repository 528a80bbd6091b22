// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace splatbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;

/// Runs one command line (without the program name) in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Golden RNG vectors, renderer and metric oracle checks. Returns the number
/// of failed checks and prints one line per check.
int selftest(std::ostream& out, unsigned threads);

} // namespace splatbench::cli
