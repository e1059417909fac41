// Deterministic helper for per-item parallel work: item i always computes the
// same values into its own slot, so results are independent of the thread
// count; callers do any cross-item reduction sequentially in index order.

#ifndef TVLEARN_PARALLEL_HPP
#define TVLEARN_PARALLEL_HPP

#include <algorithm>
#include <thread>
#include <vector>

namespace tvlearn {

template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(static_cast<long>(n) * t / threads);
    const int end = static_cast<int>(static_cast<long>(n) * (t + 1) / threads);
    pool.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace tvlearn

#endif  // TVLEARN_PARALLEL_HPP
