#pragma once

// Internal helper: run a contiguous index split across worker threads and
// rethrow the first worker exception.  Results must be merged by the caller
// in worker order so the outcome is independent of scheduling.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace doi2::detail {

template <class Fn>
void split_indices(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * workers) {
    fn(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(count, w * chunk);
    const std::size_t e = std::min(count, b + chunk);
    if (b >= e) continue;
    threads.emplace_back([&, w, b, e] {
      try {
        fn(w, b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace doi2::detail
