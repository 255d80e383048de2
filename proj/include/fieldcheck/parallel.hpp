#pragma once

// Minimal worker-pool helpers. Work is split into fixed-size chunks whose
// boundaries do not depend on the thread count, so any reduction that is
// deterministic per chunk stays deterministic globally.

#include <cstddef>
#include <functional>

namespace fieldcheck {

// Global worker count (default 1). Set once at startup from --threads or
// FIELDCHECK_THREADS; values < 1 are clamped to 1.
void set_thread_count(int n);
int thread_count();

inline constexpr std::size_t kChunkSize = 1024;

inline std::size_t chunk_count(std::size_t n_items) {
  return (n_items + kChunkSize - 1) / kChunkSize;
}

// Runs work(chunk_index, begin, end) for every chunk of [0, n_items),
// distributing chunks over thread_count() workers. Exceptions from workers
// are rethrown on the calling thread.
void for_each_chunk(
    std::size_t n_items,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& work);

}  // namespace fieldcheck
