// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace srlab {

/// Worker count: SRLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads.
/// Each index is visited exactly once; body must only write state owned by
/// its index. Rethrows the first exception raised by any worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace srlab
