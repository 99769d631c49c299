#include "common.hpp"
#include "grainstone/worklist.hpp"

namespace grainstone {

// Data-driven peeling: the initial worklist holds every node below k; removing
// a node decrements its neighbours and enqueues each one exactly when its
// degree crosses from k to k-1.
CoreResult kcore(const Graph& graph, std::uint64_t k, unsigned workers) {
  detail::Stopwatch clock;
  const auto n = graph.num_nodes();
  ThreadPool pool(detail::worker_count(workers));
  detail::Counters counters(pool.size());
  RunStats stats;

  std::vector<std::uint64_t> degree(n);
  std::vector<std::uint8_t> removed(n, 0);
  SparseWorklist worklist;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = graph.out_degree(v);
    if (degree[v] < k) {
      removed[v] = 1;
      worklist.push(v);
    }
  }

  worklist.drain(pool, [&](NodeId u, SparseWorklist::Pusher& pusher) {
    const unsigned w = pusher.worker();
    ++counters.applications[w];
    for (NodeId v : graph.out_neighbors(u)) {
      ++counters.edges[w];
      std::atomic_ref<std::uint64_t> deg(degree[v]);
      if (deg.fetch_sub(1, std::memory_order_relaxed) == k) {
        std::atomic_ref<std::uint8_t>(removed[v]).store(1, std::memory_order_relaxed);
        pusher.push(v);
      }
    }
  });
  stats.rounds = 1;

  CoreResult result;
  result.in_core.resize(n);
  for (NodeId v = 0; v < n; ++v) result.in_core[v] = removed[v] ? 0 : 1;
  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  result.stats = std::move(stats);
  return result;
}

}  // namespace grainstone
