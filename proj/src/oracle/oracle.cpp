#include "grainstone/oracle.hpp"

#include <functional>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stack>

#include "grainstone/error.hpp"

namespace grainstone::oracle {

std::vector<std::uint64_t> bfs(const Graph& graph, NodeId source) {
  std::vector<std::uint64_t> dist(graph.num_nodes(), kUnreached);
  std::queue<NodeId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (NodeId v : graph.out_neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

std::vector<std::uint64_t> dijkstra(const Graph& graph, NodeId source) {
  if (!graph.has_weights()) throw Error(Errc::precondition, "dijkstra requires edge weights");
  std::vector<std::uint64_t> dist(graph.num_nodes(), kUnreached);
  using Item = std::pair<std::uint64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto neighbors = graph.out_neighbors(u);
    const auto weights = graph.out_weights(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      const auto nd = d + weights[i];
      if (nd < dist[neighbors[i]]) {
        dist[neighbors[i]] = nd;
        heap.emplace(nd, neighbors[i]);
      }
    }
  }
  return dist;
}

std::vector<std::uint64_t> cc_unionfind(const Graph& graph) {
  const auto n = graph.num_nodes();
  std::vector<std::uint64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : graph.out_neighbors(u)) {
      const auto a = find(u);
      const auto b = find(v);
      // Keep the smaller id as the root so it ends up as the representative.
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  }
  std::vector<std::uint64_t> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = find(v);
  return labels;
}

std::vector<double> pagerank_power(const Graph& graph, double damping, std::uint64_t iterations) {
  const auto n = graph.num_nodes();
  if (n == 0) return {};
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  for (std::uint64_t it = 0; it < iterations; ++it) {
    std::vector<double> next(n, 0.0);
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      const auto deg = graph.out_degree(u);
      if (deg == 0) {
        dangling += rank[u];
        continue;
      }
      for (NodeId v : graph.out_neighbors(u)) next[v] += rank[u] / static_cast<double>(deg);
    }
    for (NodeId v = 0; v < n; ++v)
      next[v] = (1.0 - damping) / static_cast<double>(n) + damping * (next[v] + dangling / static_cast<double>(n));
    rank = std::move(next);
  }
  return rank;
}

std::vector<std::uint8_t> kcore(const Graph& graph, std::uint64_t k) {
  const auto n = graph.num_nodes();
  std::vector<std::uint8_t> alive(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::uint64_t degree = 0;
      for (NodeId u : graph.out_neighbors(v)) degree += alive[u];
      if (degree < k) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  return alive;
}

std::vector<double> bc(const Graph& graph, NodeId source) {
  const auto n = graph.num_nodes();
  std::vector<std::vector<NodeId>> pred(n);
  std::vector<double> sigma(n, 0.0);
  std::vector<std::int64_t> dist(n, -1);
  std::stack<NodeId> order;
  std::queue<NodeId> queue;
  sigma[source] = 1.0;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    order.push(v);
    for (NodeId w : graph.out_neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
      if (dist[w] == dist[v] + 1) {
        sigma[w] += sigma[v];
        pred[w].push_back(v);
      }
    }
  }
  std::vector<double> delta(n, 0.0);
  while (!order.empty()) {
    const NodeId w = order.top();
    order.pop();
    for (NodeId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
  }
  delta[source] = 0.0;
  return delta;
}

std::uint64_t triangles(const Graph& graph) {
  const auto n = graph.num_nodes();
  if (n > kMaxTriangleOracleNodes)
    throw Error(Errc::precondition, "triangle oracle is limited to " + std::to_string(kMaxTriangleOracleNodes) + " nodes");
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : graph.out_neighbors(u))
      if (u != v) adjacent[u][v] = adjacent[v][u] = true;
  std::uint64_t count = 0;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) {
      if (!adjacent[a][b]) continue;
      for (NodeId c = b + 1; c < n; ++c)
        if (adjacent[a][c] && adjacent[b][c]) ++count;
    }
  return count;
}

}  // namespace grainstone::oracle
