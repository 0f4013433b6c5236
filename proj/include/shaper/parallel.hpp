#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace shaper {

/// Runs fn(0..n_items-1) on a worker pool. Callers write results into
/// index-addressed slots and merge in index order, so output never depends on
/// the worker count or completion order.
inline void parallel_for_indexed(long n_items, const std::function<void(long)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const long workers = std::min<long>(n_items, hw ? hw : 1);
  if (workers <= 1) {
    for (long i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i; (i = next.fetch_add(1)) < n_items;) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace shaper
