#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lck {

// Map-parallel width, capped by the LCK_THREADS environment variable
// (0 or 1 = sequential).
inline int thread_budget() {
  if (const char* env = std::getenv("LCK_THREADS")) {
    int v = std::atoi(env);
    if (v <= 1) return 1;
    return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count).  Work items must be independent; callers
// keep determinism by writing into preallocated slots and reducing in fixed
// order afterwards.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  int nt = std::min(thread_budget(), count);
  if (nt <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([=, &fn] {
      for (int i = t; i < count; i += nt) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Fixed-order pairwise reduction: deterministic for a fixed slot layout.
inline double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  size_t n = v.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i < n / 2; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) v[n / 2] = v[n - 1];
    n = half;
  }
  return v[0];
}

}  // namespace lck
