#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace netemd {

// Runs fn(task, worker) for task in [0, tasks). Tasks are claimed from a
// shared counter, so the task->worker assignment is scheduling-dependent;
// callers must keep results independent of that assignment (per-task output
// slots, or commutative+associative merges). workers <= 1 runs inline.
inline void parallel_for(std::size_t tasks, int workers,
                         const std::function<void(std::size_t, int)>& fn) {
  if (workers <= 1 || tasks <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) fn(t, 0);
    return;
  }
  if (static_cast<std::size_t>(workers) > tasks)
    workers = static_cast<int>(tasks);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&](int w) {
    try {
      for (;;) {
        const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= tasks || failed.load(std::memory_order_relaxed)) break;
        fn(t, w);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace netemd
