#include "tlchan/common.hpp"

#include <algorithm>

namespace tlchan {

std::atomic<int>& thread_count_slot() {
  static std::atomic<int> n{static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()))};
  return n;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const int threads = std::min<std::int64_t>(thread_count(), n);
  if (threads <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<std::int64_t> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tlchan
