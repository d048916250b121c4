// Minimal fork-join helper; concurrency is capped by the caller (the CLI
// reads TICKMC_THREADS).  Results must be written to per-index slots so the
// outcome is independent of scheduling.
#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace tickmc {

// Runs fn(i) for i in [0, count) on up to max_threads threads.  Blocks until
// all invocations finish.  fn must not throw.
template <typename Fn>
void parallel_for(std::size_t count, int max_threads, Fn&& fn) {
  if (count == 0) return;
  std::size_t workers = std::max(1, max_threads);
  workers = std::min(workers, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline int hardware_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace tickmc
