#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace netgeo {

// Worker count: NETGEO_THREADS env var if set (>=1), else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("NETGEO_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) across worker threads. Each index is processed
// exactly once; callers keep determinism by writing results into slot i only,
// never by accumulating in arrival order.
inline void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  int workers = worker_count();
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  auto run = [&] {
    for (;;) {
      int64_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = static_cast<int>(std::min<int64_t>(workers, n));
  pool.reserve(spawn - 1);
  for (int t = 1; t < spawn; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace netgeo
