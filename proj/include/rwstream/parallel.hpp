#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace rwstream {

inline unsigned worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Static partition of [0, total) across workers. fn(worker, begin, end) runs
// on its own thread; callers keep determinism by deriving per-index seeds and
// merging worker-local state in worker order.
template <typename Fn>
void parallel_chunks(uint64_t total, Fn&& fn) {
  unsigned workers = worker_count();
  if (total < 2 * workers) {
    fn(0u, uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    uint64_t begin = std::min<uint64_t>(w * chunk, total);
    uint64_t end = std::min<uint64_t>(begin + chunk, total);
    if (begin >= end) break;
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace rwstream
