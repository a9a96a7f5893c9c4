#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace worldsheet {

/// Worker count used by grid loops; 0 means hardware concurrency.
inline std::atomic<int>& default_threads() {
  static std::atomic<int> n{0};
  return n;
}

inline int resolved_threads() {
  const int n = default_threads().load();
  return n > 0 ? n : std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, count) on a pool of threads; rethrows the first exception.
/// Each index is processed exactly once, so writes to distinct slots are race-free.
inline void parallel_for(int count, const std::function<void(int)>& fn, int threads = 0) {
  if (threads <= 0) threads = resolved_threads();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace worldsheet
