#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace schemeforge {

/// Process-wide cap on worker threads used by data-parallel loops. Defaults
/// to 1; the CLI sets it from --threads or SCHEMEFORGE_THREADS.
void set_thread_count(int threads);
int thread_count() noexcept;

/// Splits [begin, end) into contiguous chunks, one per worker. `body(i)`
/// must only write to locations owned by index i.
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  const auto workers = static_cast<std::size_t>(thread_count());
  const std::size_t n = end > begin ? end - begin : 0;
  if (workers <= 1 || n < 4096) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  const std::size_t chunks = std::min(workers, n);
  const std::size_t step = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t lo = begin + c * step;
    const std::size_t hi = std::min(end, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (std::size_t i = begin; i < std::min(end, begin + step); ++i) body(i);
  for (auto& t : pool) t.join();
}

}  // namespace schemeforge
