#pragma once

#include <cstddef>
#include <functional>

namespace hypcone {

// Worker count used by parallel_chunks. 0 means "hardware concurrency".
void set_worker_threads(int n);
int worker_threads();

// Runs fn(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// The chunk layout depends only on n, never on the worker count, so any
// reduction that combines per-chunk partials in chunk order is bit-identical
// across thread counts.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t chunk_count(std::size_t n);

} // namespace hypcone
