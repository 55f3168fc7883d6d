#include "schemeforge/parallel.hpp"

#include <atomic>

namespace schemeforge {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) { g_threads.store(std::max(1, threads)); }

int thread_count() noexcept { return g_threads.load(std::memory_order_relaxed); }

}  // namespace schemeforge
