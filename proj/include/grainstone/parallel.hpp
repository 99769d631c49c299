#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace grainstone {

// Fixed set of workers reused across rounds. Worker 0 is the calling thread.
class ThreadPool {
 public:
  explicit ThreadPool(unsigned num_workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned size() const { return num_workers_; }

  // Runs fn(worker_id) on every worker and returns once all have finished.
  // An exception thrown by any worker is rethrown here.
  void run(const std::function<void(unsigned)>& fn);

  // Dynamic loop over [begin, end) in chunks of `grain`; fn(index, worker_id).
  template <class Fn>
  void parallel_for(std::uint64_t begin, std::uint64_t end, Fn&& fn, std::uint64_t grain = 1024) {
    if (begin >= end) return;
    std::atomic<std::uint64_t> next{begin};
    run([&](unsigned worker) {
      for (;;) {
        const auto lo = next.fetch_add(grain, std::memory_order_relaxed);
        if (lo >= end) break;
        const auto hi = std::min(end, lo + grain);
        for (auto i = lo; i < hi; ++i) fn(i, worker);
      }
    });
  }

 private:
  void worker_loop(unsigned id);

  unsigned num_workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(unsigned)>* task_ = nullptr;
  std::uint64_t generation_ = 0;
  unsigned pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

// Per-worker counter slots, padded to avoid false sharing.
class WorkerCounters {
 public:
  explicit WorkerCounters(unsigned workers) : slots_(workers) {}
  std::uint64_t& operator[](unsigned worker) { return slots_[worker].value; }
  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& s : slots_) sum += s.value;
    return sum;
  }

 private:
  struct alignas(64) Slot {
    std::uint64_t value = 0;
  };
  std::vector<Slot> slots_;
};

}  // namespace grainstone
