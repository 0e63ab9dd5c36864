#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace strat {

/// Global cap on worker threads (set once by the CLI from --threads).
inline int& thread_cap() {
  static int cap = 1;
  return cap;
}

/// Runs fn(i) for i in [0, n). Each index writes only its own output slot,
/// so the result is identical regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const int cap = std::max(1, thread_cap());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>({static_cast<std::size_t>(cap), hw, n});
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace strat
