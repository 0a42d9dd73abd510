#pragma once

#include <functional>

namespace corrgeo::detail {

/// Effective worker count: CORRGEO_THREADS when set (minimum 1), otherwise
/// the hardware concurrency.
int thread_cap();

/// Runs fn(0..count-1) on up to thread_cap() workers. Results must be
/// written to per-index slots by the caller; merge order is the caller's,
/// so output stays independent of the execution interleaving.
void parallel_for_indexed(int count, const std::function<void(int)>& fn);

}  // namespace corrgeo::detail
