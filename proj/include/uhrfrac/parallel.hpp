#pragma once

#include <cstddef>
#include <functional>

namespace uhrfrac {

/// Number of worker threads: hardware concurrency capped by the
/// UHRFRAC_THREADS environment variable (read once).
std::size_t thread_budget();

/// Runs body(i) for i in [0, count) across the thread budget. Each index
/// is processed exactly once and bodies must write only to their own
/// slots; results are identical to the serial loop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace uhrfrac
