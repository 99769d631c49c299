#include <cmath>

#include "common.hpp"

namespace grainstone {

namespace {

constexpr std::uint64_t kBlock = 4096;

// Deterministic parallel sum: fixed blocks, partials folded in block order.
template <class Fn>
double block_sum(ThreadPool& pool, std::uint64_t n, Fn&& term) {
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  pool.parallel_for(
      0, blocks,
      [&](std::uint64_t b, unsigned) {
        double sum = 0.0;
        const auto end = std::min(n, (b + 1) * kBlock);
        for (auto v = b * kBlock; v < end; ++v) sum += term(v);
        partial[b] = sum;
      },
      1);
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

RankResult pagerank(const Graph& graph, const PageRankParams& params, unsigned workers) {
  if (!graph.has_in_edges()) throw Error(Errc::precondition, "pagerank requires in-edges (build the transpose)");
  if (params.damping < 0.0 || params.damping > 1.0) throw Error(Errc::invalid_argument, "damping must be in [0,1]");

  detail::Stopwatch clock;
  const auto n = graph.num_nodes();
  ThreadPool pool(detail::worker_count(workers));
  detail::Counters counters(pool.size());
  RunStats stats;
  if (n == 0) return {{}, stats};

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n, 0.0);
  std::vector<double> contribution(n, 0.0);

  while (stats.rounds < params.max_rounds) {
    ++stats.rounds;
    pool.parallel_for(0, n, [&](NodeId u, unsigned) {
      const auto deg = graph.out_degree(u);
      contribution[u] = deg ? rank[u] / static_cast<double>(deg) : 0.0;
    });
    const double dangling = block_sum(pool, n, [&](NodeId u) { return graph.out_degree(u) ? 0.0 : rank[u]; });
    const double base = (1.0 - params.damping) * inv_n + params.damping * dangling * inv_n;

    pool.parallel_for(0, n, [&](NodeId v, unsigned w) {
      ++counters.applications[w];
      double sum = 0.0;
      for (NodeId u : graph.in_neighbors(v)) sum += contribution[u];
      counters.edges[w] += graph.in_degree(v);
      next[v] = base + params.damping * sum;
    });
    const double change = block_sum(pool, n, [&](NodeId v) { return std::abs(next[v] - rank[v]); });
    rank.swap(next);
    if (change < params.tolerance) break;
  }

  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  return {std::move(rank), std::move(stats)};
}

}  // namespace grainstone
