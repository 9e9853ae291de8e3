#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace eigendist {

/// Thread cap: EIGENDIST_THREADS if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("EIGENDIST_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Static block partition of [0, count). Tasks must write to disjoint
/// locations; the result is then independent of the schedule.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  int threads = std::min(thread_count(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace eigendist
