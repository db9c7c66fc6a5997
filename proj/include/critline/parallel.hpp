#pragma once

#include <cstdint>
#include <functional>

namespace critline {

// 0 -> hardware concurrency, otherwise the requested count.
int resolve_threads(int requested);

// Splits [0, n) into fixed-size chunks and calls
//   fn(chunk_index, begin, end)
// from a worker pool. Chunk boundaries depend only on n and chunk_size, so
// per-chunk results combined in chunk order are identical for any thread
// count. Exceptions thrown by fn are rethrown on the calling thread.
void parallel_chunks(std::int64_t n, std::int64_t chunk_size, int threads,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

} // namespace critline
