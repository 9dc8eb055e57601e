#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace coengage {

// Resolves the worker count: explicit flag value wins, then the
// COENGAGE_THREADS environment variable, then hardware concurrency.
unsigned resolve_thread_count(unsigned requested);

// Runs fn(chunk_index, begin, end) over [0, n_items) split into fixed-size
// chunks. Chunk boundaries depend only on n_items and chunk_size, never on
// the worker count, so per-chunk outputs can be combined in chunk order.
template <typename Fn>
void parallel_chunks(std::size_t n_items, std::size_t chunk_size, unsigned threads, Fn&& fn) {
  if (n_items == 0)
    return;
  if (chunk_size == 0)
    chunk_size = 1;
  const std::size_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
  if (threads <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c)
      fn(c, c * chunk_size, std::min(n_items, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks || failed.load())
        return;
      try {
        fn(c, c * chunk_size, std::min(n_items, (c + 1) * chunk_size));
      } catch (...) {
        if (!failed.exchange(true))
          error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
  pool.reserve(n_workers);
  for (unsigned t = 0; t < n_workers; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace coengage
