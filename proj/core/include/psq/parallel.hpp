#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace psq {

// Worker count for batch operations. 0 restores the default (hardware
// concurrency). The thread count never changes any result: work is split into
// chunks whose boundaries depend only on the problem size, each chunk owns its
// state, and callers merge chunk results in index order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(chunk) for chunk = 0..n_chunks-1 on a pool of worker threads.
// fn must touch only state owned by its chunk. Exceptions from workers are
// rethrown on the calling thread (first one wins).
void run_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

// Splits [0,n) into roughly equal contiguous chunks; returns chunk count and
// fills bounds so that chunk i covers [bounds[i], bounds[i+1]).
std::size_t chunk_bounds(std::size_t n, std::size_t target_chunks, std::vector<std::size_t>& bounds);

}  // namespace psq
