#include <algorithm>

#include "common.hpp"

namespace grainstone {

namespace {

void check_tc_input(const Graph& graph) {
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const auto adj = graph.out_neighbors(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] == u) throw Error(Errc::precondition, "triangle counting requires no self-loops (node " + std::to_string(u) + ")");
      if (i > 0 && adj[i - 1] >= adj[i])
        throw Error(Errc::precondition,
                    "triangle counting requires strictly sorted adjacency (node " + std::to_string(u) + ")");
    }
  }
}

}  // namespace

// Each triangle is counted once, at its lowest-ranked vertex, where rank
// orders nodes by (degree, id). Oriented lists keep only higher-ranked
// neighbours and stay sorted by id, so they intersect by merging.
CountResult triangle_count(const Graph& graph, unsigned workers) {
  check_tc_input(graph);
  detail::Stopwatch clock;
  const auto n = graph.num_nodes();
  ThreadPool pool(detail::worker_count(workers));
  detail::Counters counters(pool.size());
  RunStats stats;

  auto ranks_below = [&](NodeId a, NodeId b) {
    const auto da = graph.out_degree(a);
    const auto db = graph.out_degree(b);
    return da < db || (da == db && a < b);
  };

  std::vector<EdgeIndex> offsets(n + 1, 0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : graph.out_neighbors(u))
      if (ranks_below(u, v)) ++offsets[u + 1];
  for (NodeId u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
  std::vector<NodeId> oriented(offsets[n]);
  for (NodeId u = 0; u < n; ++u) {
    auto out = offsets[u];
    for (NodeId v : graph.out_neighbors(u))
      if (ranks_below(u, v)) oriented[out++] = v;
  }
  auto higher = [&](NodeId u) {
    return std::span<const NodeId>(oriented.data() + offsets[u], offsets[u + 1] - offsets[u]);
  };

  WorkerCounters triangles(pool.size());
  pool.parallel_for(
      0, n,
      [&](NodeId u, unsigned w) {
        ++counters.applications[w];
        const auto hu = higher(u);
        for (NodeId v : hu) {
          const auto hv = higher(v);
          counters.edges[w] += hu.size() + hv.size();
          auto a = hu.begin();
          auto b = hv.begin();
          while (a != hu.end() && b != hv.end()) {
            if (*a < *b) {
              ++a;
            } else if (*b < *a) {
              ++b;
            } else {
              ++triangles[w];
              ++a;
              ++b;
            }
          }
        }
      },
      64);
  stats.rounds = 1;

  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  return {triangles.total(), std::move(stats)};
}

}  // namespace grainstone
