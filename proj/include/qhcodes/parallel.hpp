#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qh {

// Worker cap for parallel loops; 0 means hardware_concurrency().
unsigned parallelism();
void set_parallelism(unsigned workers);

// Splits [0, n) into contiguous ranges and calls fn(begin, end, worker) on up
// to parallelism() threads. Ranges are disjoint and deterministic, so callers
// can merge per-worker results in worker order.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(parallelism(), n));
  if (workers == 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
}

}  // namespace qh
