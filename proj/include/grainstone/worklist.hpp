#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "grainstone/graph.hpp"
#include "grainstone/parallel.hpp"

namespace grainstone {

// Bulk-synchronous frontier over all nodes: one bit per node for the current
// round and one for the next.
class DenseFrontier {
 public:
  explicit DenseFrontier(std::uint64_t num_nodes);

  std::uint64_t num_nodes() const { return num_nodes_; }
  std::uint64_t round() const { return round_; }
  // popcount of the current bit-vector, as of the last swap.
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Marks `node` in the next frontier. True iff the bit was previously clear.
  bool activate(NodeId node) {
    const std::uint64_t mask = std::uint64_t{1} << (node & 63);
    std::atomic_ref<std::uint64_t> word(next_[node >> 6]);
    return (word.fetch_or(mask, std::memory_order_relaxed) & mask) == 0;
  }

  bool contains(NodeId node) const { return (current_[node >> 6] >> (node & 63)) & 1; }

  // current := next, next cleared. Returns the new frontier size.
  std::uint64_t swap();

  std::vector<NodeId> members() const;

  // fn(node, worker) for every node of the current frontier.
  template <class Fn>
  void for_each(ThreadPool& pool, Fn&& fn) const {
    pool.parallel_for(
        0, current_.size(),
        [&](std::uint64_t w, unsigned worker) {
          std::uint64_t bits = current_[w];
          while (bits) {
            fn((w << 6) + std::countr_zero(bits), worker);
            bits &= bits - 1;
          }
        },
        64);
  }

 private:
  std::uint64_t num_nodes_;
  std::vector<std::uint64_t> current_;
  std::vector<std::uint64_t> next_;
  std::uint64_t size_ = 0;
  std::uint64_t round_ = 0;
};

// Unordered bag of node ids stored in fixed-capacity chunks. Duplicates are
// kept. Draining runs until quiescence: work pushed by the worker function is
// drained before drain() returns.
class SparseWorklist {
 public:
  static constexpr std::size_t kDefaultChunkCapacity = 64;
  using Chunk = std::vector<NodeId>;

  explicit SparseWorklist(std::size_t chunk_capacity = kDefaultChunkCapacity)
      : capacity_(std::max<std::size_t>(1, chunk_capacity)) {}

  SparseWorklist(const SparseWorklist&) = delete;
  SparseWorklist& operator=(const SparseWorklist&) = delete;

  std::size_t chunk_capacity() const { return capacity_; }

  // Thread-safe single push.
  void push(NodeId node) {
    std::lock_guard lock(mutex_);
    if (chunks_.empty() || chunks_.back().size() >= capacity_) {
      chunks_.emplace_back();
      chunks_.back().reserve(capacity_);
    }
    chunks_.back().push_back(node);
    pending_.fetch_add(1, std::memory_order_acq_rel);
  }

  bool empty() const { return pending_.load(std::memory_order_acquire) == 0; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(pending_.load(std::memory_order_acquire)); }

  // Per-worker push buffer. Publishes whole chunks; flush() publishes the rest.
  // Buffered ids are not counted by empty()/size() until published.
  class Pusher {
   public:
    Pusher(SparseWorklist& owner, unsigned worker) : owner_(&owner), worker_(worker) {
      chunk_.reserve(owner.capacity_);
    }
    Pusher(Pusher&& other) noexcept
        : owner_(std::exchange(other.owner_, nullptr)), worker_(other.worker_), chunk_(std::move(other.chunk_)) {}
    Pusher& operator=(Pusher&&) = delete;
    ~Pusher() { flush(); }

    void push(NodeId node) {
      chunk_.push_back(node);
      if (chunk_.size() >= owner_->capacity_) owner_->publish(chunk_);
    }
    void flush() {
      if (owner_ && !chunk_.empty()) owner_->publish(chunk_);
    }
    unsigned worker() const { return worker_; }

   private:
    SparseWorklist* owner_;
    unsigned worker_;
    std::vector<NodeId> chunk_;
  };

  // fn(node, Pusher&) once per pushed occurrence. Returns the invocation count.
  template <class Fn>
  std::uint64_t drain(ThreadPool& pool, Fn&& fn) {
    WorkerCounters drained(pool.size());
    pool.run([&](unsigned worker) {
      Pusher pusher(*this, worker);
      Chunk work;
      for (;;) {
        if (!pop(work)) {
          if (pending_.load(std::memory_order_acquire) == 0) break;
          std::this_thread::yield();
          continue;
        }
        for (NodeId node : work) fn(node, pusher);
        pusher.flush();
        drained[worker] += work.size();
        pending_.fetch_sub(static_cast<std::int64_t>(work.size()), std::memory_order_acq_rel);
      }
    });
    return drained.total();
  }

  template <class Fn>
  std::uint64_t drain(Fn&& fn) {
    ThreadPool pool(1);
    return drain(pool, std::forward<Fn>(fn));
  }

 private:
  void publish(Chunk& chunk) {
    std::lock_guard lock(mutex_);
    pending_.fetch_add(static_cast<std::int64_t>(chunk.size()), std::memory_order_acq_rel);
    chunks_.push_back(std::move(chunk));
    chunk = Chunk();
    chunk.reserve(capacity_);
  }

  bool pop(Chunk& out) {
    std::lock_guard lock(mutex_);
    if (chunks_.empty()) return false;
    out = std::move(chunks_.back());
    chunks_.pop_back();
    return true;
  }

  std::size_t capacity_;
  std::mutex mutex_;
  std::vector<Chunk> chunks_;
  // Items published or in flight and not yet processed.
  std::atomic<std::int64_t> pending_{0};
};

// Priority-bucketed worklist for delta-stepping. Buckets are drained in
// ascending index; a push into a bucket below the one being drained re-opens
// it and it is drained before work resumes at the higher index.
class BucketedWorklist {
 public:
  using Chunk = std::vector<NodeId>;

  explicit BucketedWorklist(std::size_t chunk_capacity = SparseWorklist::kDefaultChunkCapacity)
      : capacity_(std::max<std::size_t>(1, chunk_capacity)) {}

  BucketedWorklist(const BucketedWorklist&) = delete;
  BucketedWorklist& operator=(const BucketedWorklist&) = delete;

  void push(NodeId node, std::uint64_t priority) {
    std::lock_guard lock(mutex_);
    auto& slot = slot_for(priority);
    if (slot.empty() || slot.back().size() >= capacity_) {
      slot.emplace_back();
      slot.back().reserve(capacity_);
    }
    slot.back().push_back(node);
    pending_.fetch_add(1, std::memory_order_acq_rel);
  }

  bool empty() const { return pending_.load(std::memory_order_acquire) == 0; }

  // Number of bucket slots currently allocated (live priority span).
  std::size_t slot_count() const {
    std::lock_guard lock(mutex_);
    return slots_.size();
  }

  class Pusher {
   public:
    Pusher(BucketedWorklist& owner, unsigned worker) : owner_(&owner), worker_(worker) {}
    ~Pusher() { flush(); }

    void push(NodeId node, std::uint64_t priority) {
      min_pushed_ = std::min(min_pushed_, priority);
      auto it = std::find_if(outs_.begin(), outs_.end(), [&](const auto& o) { return o.first == priority; });
      if (it == outs_.end()) {
        outs_.emplace_back(priority, Chunk());
        it = std::prev(outs_.end());
        it->second.reserve(owner_->capacity_);
      }
      it->second.push_back(node);
      if (it->second.size() >= owner_->capacity_) {
        owner_->publish(it->first, it->second);
        outs_.erase(it);
      }
    }

    void flush() {
      for (auto& [priority, chunk] : outs_) owner_->publish(priority, chunk);
      outs_.clear();
    }

    unsigned worker() const { return worker_; }

   private:
    friend class BucketedWorklist;
    BucketedWorklist* owner_;
    unsigned worker_;
    std::vector<std::pair<std::uint64_t, Chunk>> outs_;
    std::uint64_t min_pushed_ = std::numeric_limits<std::uint64_t>::max();
  };

  // fn(node, priority, Pusher&) once per pushed occurrence.
  template <class Fn>
  std::uint64_t drain(ThreadPool& pool, Fn&& fn) {
    WorkerCounters drained(pool.size());
    pool.run([&](unsigned worker) {
      Pusher pusher(*this, worker);
      Chunk work;
      std::uint64_t priority = 0;
      for (;;) {
        if (!pop_lowest(work, priority)) {
          if (pending_.load(std::memory_order_acquire) == 0) break;
          std::this_thread::yield();
          continue;
        }
        pusher.min_pushed_ = std::numeric_limits<std::uint64_t>::max();
        std::size_t done = 0;
        while (done < work.size()) {
          fn(work[done++], priority, pusher);
          if (pusher.min_pushed_ < priority) break;
        }
        if (done < work.size()) {
          Chunk rest(work.begin() + static_cast<std::ptrdiff_t>(done), work.end());
          publish(priority, rest);
        }
        pusher.flush();
        drained[worker] += done;
        pending_.fetch_sub(static_cast<std::int64_t>(work.size()), std::memory_order_acq_rel);
      }
    });
    return drained.total();
  }

  template <class Fn>
  std::uint64_t drain(Fn&& fn) {
    ThreadPool pool(1);
    return drain(pool, std::forward<Fn>(fn));
  }

 private:
  // Caller holds mutex_.
  std::vector<Chunk>& slot_for(std::uint64_t priority) {
    if (slots_.empty()) base_ = priority;
    while (priority < base_) {
      slots_.emplace_front();
      --base_;
    }
    if (priority - base_ >= slots_.size()) slots_.resize(priority - base_ + 1);
    return slots_[priority - base_];
  }

  void publish(std::uint64_t priority, Chunk& chunk) {
    std::lock_guard lock(mutex_);
    pending_.fetch_add(static_cast<std::int64_t>(chunk.size()), std::memory_order_acq_rel);
    slot_for(priority).push_back(std::move(chunk));
    chunk = Chunk();
    chunk.reserve(capacity_);
  }

  bool pop_lowest(Chunk& out, std::uint64_t& priority) {
    std::lock_guard lock(mutex_);
    // Empty leading slots are retired, so the front slot is the lowest open bucket.
    while (!slots_.empty() && slots_.front().empty()) {
      slots_.pop_front();
      ++base_;
    }
    if (slots_.empty()) return false;
    auto& slot = slots_.front();
    out = std::move(slot.back());
    slot.pop_back();
    priority = base_;
    return true;
  }

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::deque<std::vector<Chunk>> slots_;
  std::uint64_t base_ = 0;
  std::atomic<std::int64_t> pending_{0};
};

}  // namespace grainstone
