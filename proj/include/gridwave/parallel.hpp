// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace gridwave {

// Worker count: hardware concurrency, capped by GRIDWAVE_THREADS when set.
std::size_t worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks never
// overlap, so bodies that only write their own indices stay deterministic
// regardless of the worker count. The first exception is rethrown.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace gridwave
