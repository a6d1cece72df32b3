#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hibound {

/// Worker cap: HIBOUND_THREADS when set, otherwise hardware concurrency.
std::size_t worker_count();

/// Runs body(begin, end) over a static partition of [0, n). Chunks are sized so
/// that each gets at least min_grain items; results must not depend on the split.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_grain = 1) {
  if (n == 0) return;
  if (min_grain == 0) min_grain = 1;
  std::size_t workers = worker_count();
  const std::size_t max_chunks = (n + min_grain - 1) / min_grain;
  if (workers > max_chunks) workers = max_chunks;
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    try {
      body(begin, end);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(run, w);
    run(0);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hibound
