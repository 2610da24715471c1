#pragma once

#include <cstddef>
#include <functional>

namespace gfcalc {

// Worker count: GFCALC_THREADS when set, else hardware concurrency capped at 8.
int thread_budget();

// Runs fn(0..n-1), possibly across threads. Work items must be independent;
// results keyed by index stay deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gfcalc
