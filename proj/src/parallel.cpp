#include "qhcodes/parallel.hpp"

#include <atomic>

namespace qh {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned parallelism() {
  const unsigned w = g_workers.load(std::memory_order_relaxed);
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_parallelism(unsigned workers) { g_workers.store(workers, std::memory_order_relaxed); }

}  // namespace qh
