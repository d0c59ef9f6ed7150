#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace curvorbit {

// Thread count: requested (0 = hardware), capped by CURVORBIT_THREADS.
inline int resolve_thread_count(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CURVORBIT_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

// Runs fn(i) for i in [0, count) over a static block partition. Results must
// be written to index-addressed slots so the reduction order never depends
// on the thread count.
template <typename F>
void parallel_indexed(int count, int threads, F&& fn) {
  threads = std::min(std::max(threads, 1), std::max(count, 1));
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=, &fn] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace curvorbit
