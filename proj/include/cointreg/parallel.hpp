#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cointreg {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write only to slots owned by i; the first exception is rethrown.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task)
{
  const unsigned workers =
    static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      task(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error)
              error = std::current_exception();
          }
        }
      });
    }
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace cointreg
