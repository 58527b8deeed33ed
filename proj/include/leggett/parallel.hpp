#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace leggett {

// Block-parallel loop over [0, n). Falls back to a direct call for a single
// thread; block boundaries are deterministic for a given thread count.
inline void parallel_for(long n, int threads,
                         const std::function<void(long, long)>& body) {
  if (n <= 0) return;
  threads = std::max(1, threads);
  if (threads == 1 || n < 2048) {
    body(0, n);
    return;
  }
  const long block = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * block;
    const long hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace leggett
