#include "common.hpp"
#include "grainstone/worklist.hpp"

namespace grainstone {

namespace {

using detail::Counters;

void relax_async(const Graph& graph, NodeId source, std::uint64_t delta, ThreadPool& pool, LabelArray& dist,
                 Counters& counters, RunStats& stats) {
  BucketedWorklist worklist;
  worklist.push(source, 0);
  worklist.drain(pool, [&](NodeId u, std::uint64_t bucket, BucketedWorklist::Pusher& pusher) {
    const Label du = dist.load(u);
    // A later, lower-bucket push already covered this entry.
    if (du / delta < bucket) return;
    const unsigned w = pusher.worker();
    ++counters.applications[w];
    const auto neighbors = graph.out_neighbors(u);
    const auto weights = graph.out_weights(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      ++counters.edges[w];
      const Label candidate = du + weights[i];
      if (dist.atomic_min(neighbors[i], candidate)) pusher.push(neighbors[i], candidate / delta);
    }
  });
  stats.rounds = 1;
}

void relax_dense_bsp(const Graph& graph, NodeId source, ThreadPool& pool, LabelArray& dist, Counters& counters,
                     RunStats& stats) {
  DenseFrontier frontier(graph.num_nodes());
  frontier.activate(source);
  while (frontier.swap() > 0) {
    ++stats.rounds;
    stats.frontier_sizes.push_back(frontier.size());
    frontier.for_each(pool, [&](NodeId u, unsigned w) {
      ++counters.applications[w];
      const Label du = dist.load(u);
      const auto neighbors = graph.out_neighbors(u);
      const auto weights = graph.out_weights(u);
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        ++counters.edges[w];
        if (dist.atomic_min(neighbors[i], du + weights[i])) frontier.activate(neighbors[i]);
      }
    });
  }
}

// Textbook Bellman-Ford: every round applies the operator to every node and
// reads only the previous round's distances.
void relax_topology(const Graph& graph, ThreadPool& pool, LabelArray& dist, Counters& counters,
                    RunStats& stats) {
  const auto n = graph.num_nodes();
  std::vector<Label> previous;
  for (;;) {
    previous = dist.values();
    std::atomic<bool> changed{false};
    ++stats.rounds;
    pool.parallel_for(0, n, [&](NodeId u, unsigned w) {
      ++counters.applications[w];
      const Label du = previous[u];
      if (du == kUnreached) return;
      const auto neighbors = graph.out_neighbors(u);
      const auto weights = graph.out_weights(u);
      bool any = false;
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        ++counters.edges[w];
        any |= dist.atomic_min(neighbors[i], du + weights[i]);
      }
      if (any) changed.store(true, std::memory_order_relaxed);
    });
    if (!changed.load() || stats.rounds >= n) break;
  }
}

}  // namespace

std::uint64_t default_delta(const Graph& graph) {
  if (!graph.has_weights() || graph.num_edges() == 0) return 1;
  long double sum = 0;
  for (auto w : graph.out_csr().weights) sum += w;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(sum / graph.num_edges()));
}

LabelResult sssp(const Graph& graph, NodeId source, SsspVariant variant, std::uint64_t delta, unsigned workers) {
  detail::check_source(graph, source);
  if (!graph.has_weights()) throw Error(Errc::precondition, "sssp requires edge weights");
  if (delta == 0) throw Error(Errc::invalid_argument, "delta must be >= 1");

  detail::Stopwatch clock;
  ThreadPool pool(detail::worker_count(workers));
  LabelArray dist(graph.num_nodes(), kUnreached);
  dist.store(source, 0);
  Counters counters(pool.size());
  RunStats stats;

  switch (variant) {
    case SsspVariant::delta_async:
      relax_async(graph, source, delta, pool, dist, counters, stats);
      break;
    case SsspVariant::data_driven_bsp:
      relax_dense_bsp(graph, source, pool, dist, counters, stats);
      break;
    case SsspVariant::bellman_ford_topo:
      relax_topology(graph, pool, dist, counters, stats);
      break;
  }
  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  return {std::move(dist).values(), std::move(stats)};
}

std::string_view to_string(SsspVariant v) {
  switch (v) {
    case SsspVariant::delta_async:
      return "delta_async";
    case SsspVariant::data_driven_bsp:
      return "data_driven_bsp";
    case SsspVariant::bellman_ford_topo:
      return "bellman_ford_topo";
  }
  return "?";
}

}  // namespace grainstone
