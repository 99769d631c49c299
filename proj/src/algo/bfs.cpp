#include <memory>
#include <vector>

#include "common.hpp"
#include "grainstone/worklist.hpp"

namespace grainstone {

namespace {

using detail::Counters;

struct BfsState {
  const Graph& graph;
  ThreadPool& pool;
  LabelArray dist;
  Counters counters;
  RunStats stats;
};

// One push step from a sparse frontier. Returns the out-degree sum of the
// newly discovered nodes.
std::uint64_t push_step(BfsState& s, SparseWorklist& current, SparseWorklist& next, Label level) {
  std::vector<SparseWorklist::Pusher> out;
  out.reserve(s.pool.size());
  for (unsigned w = 0; w < s.pool.size(); ++w) out.emplace_back(next, w);
  WorkerCounters scout(s.pool.size());
  current.drain(s.pool, [&](NodeId u, SparseWorklist::Pusher& self) {
    const unsigned w = self.worker();
    ++s.counters.applications[w];
    for (NodeId v : s.graph.out_neighbors(u)) {
      ++s.counters.edges[w];
      if (s.dist.load(v) == kUnreached && s.dist.compare_exchange(v, kUnreached, level + 1)) {
        out[w].push(v);
        scout[w] += s.graph.out_degree(v);
      }
    }
  });
  for (auto& p : out) p.flush();
  return scout.total();
}

// One pull step: every unvisited node looks for a parent in the current frontier.
void pull_step(BfsState& s, DenseFrontier& frontier, Label level) {
  s.pool.parallel_for(0, s.graph.num_nodes(), [&](NodeId v, unsigned w) {
    if (s.dist.load(v) != kUnreached) return;
    ++s.counters.applications[w];
    for (NodeId u : s.graph.in_neighbors(v)) {
      ++s.counters.edges[w];
      if (frontier.contains(u)) {
        s.dist.store(v, level + 1);
        frontier.activate(v);
        break;
      }
    }
  });
}

}  // namespace

LabelResult bfs(const Graph& graph, NodeId source, BfsVariant variant, unsigned workers,
                const DirectionOptParams& params) {
  detail::check_source(graph, source);
  if (variant == BfsVariant::direction_opt && !graph.has_in_edges())
    throw Error(Errc::precondition, "direction_opt bfs requires in-edges (build the transpose)");

  detail::Stopwatch clock;
  ThreadPool pool(detail::worker_count(workers));
  BfsState s{graph, pool, LabelArray(graph.num_nodes(), kUnreached), Counters(pool.size()), {}};
  s.dist.store(source, 0);

  const auto n = graph.num_nodes();
  const double pull_threshold = static_cast<double>(graph.num_edges()) / params.alpha;
  auto current = std::make_unique<SparseWorklist>();
  current->push(source);
  std::uint64_t frontier_size = 1;
  std::uint64_t scout = graph.out_degree(source);
  Label level = 0;

  while (frontier_size > 0) {
    ++s.stats.rounds;
    s.stats.frontier_sizes.push_back(frontier_size);

    if (variant == BfsVariant::direction_opt && static_cast<double>(scout) > pull_threshold) {
      DenseFrontier frontier(n);
      current->drain(pool, [&](NodeId v, SparseWorklist::Pusher&) { frontier.activate(v); });
      frontier.swap();
      // Stay in pull mode while the frontier grows or is still dense.
      for (;;) {
        pull_step(s, frontier, level);
        ++level;
        const auto previous = frontier.size();
        const auto size = frontier.swap();
        if (size == 0) break;
        if (size < previous && static_cast<double>(size) <= static_cast<double>(n) / params.beta) break;
        ++s.stats.rounds;
        s.stats.frontier_sizes.push_back(size);
      }
      current = std::make_unique<SparseWorklist>();
      scout = 0;
      for (NodeId v : frontier.members()) {
        current->push(v);
        scout += graph.out_degree(v);
      }
      frontier_size = frontier.size();
      continue;
    }

    auto next = std::make_unique<SparseWorklist>();
    scout = push_step(s, *current, *next, level);
    ++level;
    current = std::move(next);
    frontier_size = current->size();
  }

  s.counters.fold_into(s.stats);
  s.stats.wall_ms = clock.elapsed_ms();
  return {std::move(s.dist).values(), std::move(s.stats)};
}

std::string_view to_string(BfsVariant v) {
  return v == BfsVariant::push_bsp_sparse ? "push_bsp_sparse" : "direction_opt";
}

}  // namespace grainstone
