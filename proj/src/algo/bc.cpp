#include <atomic>

#include "common.hpp"

namespace grainstone {

// Brandes single-source dependency accumulation. Forward: level-synchronous
// BFS, then shortest-path counts pushed level by level. Backward: each node
// pulls dependencies from its successors on the next level.
ScoreResult betweenness(const Graph& graph, NodeId source, unsigned workers) {
  detail::check_source(graph, source);
  detail::Stopwatch clock;
  const auto n = graph.num_nodes();
  ThreadPool pool(detail::worker_count(workers));
  detail::Counters counters(pool.size());
  RunStats stats;

  LabelArray dist(n, kUnreached);
  dist.store(source, 0);
  std::vector<std::vector<NodeId>> levels{{source}};
  std::mutex levels_mutex;
  while (!levels.back().empty()) {
    const auto& frontier = levels.back();
    const Label depth = levels.size() - 1;
    std::vector<NodeId> next;
    pool.parallel_for(
        0, frontier.size(),
        [&](std::uint64_t i, unsigned w) {
          ++counters.applications[w];
          std::vector<NodeId> found;
          for (NodeId v : graph.out_neighbors(frontier[i])) {
            ++counters.edges[w];
            if (dist.load(v) == kUnreached && dist.compare_exchange(v, kUnreached, depth + 1)) found.push_back(v);
          }
          if (!found.empty()) {
            std::lock_guard lock(levels_mutex);
            next.insert(next.end(), found.begin(), found.end());
          }
        },
        64);
    levels.push_back(std::move(next));
  }
  levels.pop_back();
  stats.rounds = levels.size();
  for (const auto& level : levels) stats.frontier_sizes.push_back(level.size());

  // Path counts are integers below 2^53 for any graph this engine runs, so the
  // concurrent additions are exact regardless of order.
  std::vector<double> sigma(n, 0.0);
  sigma[source] = 1.0;
  for (std::size_t d = 0; d + 1 < levels.size(); ++d) {
    const auto& level = levels[d];
    pool.parallel_for(
        0, level.size(),
        [&](std::uint64_t i, unsigned) {
          const NodeId v = level[i];
          for (NodeId w : graph.out_neighbors(v))
            if (dist.load(w) == d + 1) std::atomic_ref<double>(sigma[w]).fetch_add(sigma[v], std::memory_order_relaxed);
        },
        64);
  }

  std::vector<double> delta(n, 0.0);
  for (std::size_t d = levels.size(); d-- > 0;) {
    const auto& level = levels[d];
    pool.parallel_for(
        0, level.size(),
        [&](std::uint64_t i, unsigned w) {
          const NodeId v = level[i];
          double sum = 0.0;
          for (NodeId succ : graph.out_neighbors(v)) {
            ++counters.edges[w];
            if (dist.load(succ) == d + 1) sum += sigma[v] / sigma[succ] * (1.0 + delta[succ]);
          }
          delta[v] = sum;
        },
        64);
  }
  delta[source] = 0.0;

  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  return {std::move(delta), std::move(stats)};
}

}  // namespace grainstone
