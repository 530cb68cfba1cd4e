#pragma once

#include <cstddef>
#include <functional>

namespace muxdesigner {

// Number of worker threads to use: the MUXDESIGNER_THREADS environment
// variable when set to a positive integer, otherwise the hardware
// concurrency, and at least 1.
int thread_budget();

// Runs fn(i) for every i in [0, n) across up to thread_budget()
// threads. fn must not touch shared mutable state; each index writes
// only its own slot. Blocks until every call returned. Exceptions from
// fn are collected and the first one rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace muxdesigner
