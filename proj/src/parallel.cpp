#include "fieldcheck/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace fieldcheck {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }

int thread_count() { return g_threads.load(); }

void for_each_chunk(
    std::size_t n_items,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& work) {
  const std::size_t n_chunks = chunk_count(n_items);
  const int workers =
      static_cast<int>(std::min<std::size_t>(thread_count(), n_chunks));

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(begin + kChunkSize, n_items);
    work(c, begin, end);
  };

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = next.fetch_add(1); c < n_chunks;
             c = next.fetch_add(1)) {
          run_chunk(c);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace fieldcheck
