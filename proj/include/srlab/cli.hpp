// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace srlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the srlab command line. Returns the process exit code:
/// 0 on success, 1 on I/O or runtime errors, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srlab
