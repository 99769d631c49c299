#include <deque>
#include <limits>

#include "grainstone/graph.hpp"

namespace grainstone {

namespace {

constexpr std::uint64_t kUnseen = std::numeric_limits<std::uint64_t>::max();

// Returns (farthest node, its distance) of a BFS from `source`; ties go to the smaller id.
std::pair<NodeId, std::uint64_t> bfs_sweep(const Graph& graph, NodeId source) {
  std::vector<std::uint64_t> dist(graph.num_nodes(), kUnseen);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  NodeId far = source;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (dist[u] > dist[far] || (dist[u] == dist[far] && u < far)) far = u;
    for (NodeId v : graph.out_neighbors(u)) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return {far, dist[far]};
}

}  // namespace

GraphMeta compute_meta(const Graph& graph) {
  GraphMeta meta;
  const auto n = graph.num_nodes();
  if (n == 0) return meta;

  std::vector<std::uint64_t> in_degree(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    const auto deg = graph.out_degree(u);
    if (deg > meta.max_out_degree) {
      meta.max_out_degree = deg;
      meta.max_out_degree_node = u;
    }
    for (NodeId v : graph.out_neighbors(u)) ++in_degree[v];
  }
  for (auto d : in_degree) meta.max_in_degree = std::max(meta.max_in_degree, d);

  // Two-sweep estimate. Directed graphs can strand the second sweep at a sink,
  // so the larger of the two eccentricities is kept.
  const auto [far, first] = bfs_sweep(graph, meta.max_out_degree_node);
  const auto second = bfs_sweep(graph, far).second;
  meta.estimated_diameter = std::max(first, second);
  return meta;
}

}  // namespace grainstone
