#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cusplab {

// Run f(i) for i in [0, n) on up to `jobs` threads. Work items may finish in
// any order; callers keep results in pre-indexed slots and reduce in a fixed
// order afterwards, so the outcome does not depend on the schedule.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(n, std::size_t(jobs > 1 ? jobs : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex guard;
  for (std::size_t wkr = 0; wkr < workers; ++wkr) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(guard);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cusplab
