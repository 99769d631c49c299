#include "common.hpp"
#include "grainstone/worklist.hpp"

namespace grainstone {

LabelResult connected_components(const Graph& input, CcVariant variant, unsigned workers) {
  detail::Stopwatch clock;
  const Graph graph = input.with_transpose();
  const auto n = graph.num_nodes();
  ThreadPool pool(detail::worker_count(workers));
  detail::Counters counters(pool.size());
  RunStats stats;

  LabelArray labels(n, 0);
  DenseFrontier frontier(n);
  for (NodeId v = 0; v < n; ++v) {
    labels.store(v, v);
    frontier.activate(v);
  }

  auto push_label = [&](Label label, NodeId v, unsigned w) {
    ++counters.edges[w];
    if (labels.atomic_min(v, label)) frontier.activate(v);
  };

  while (frontier.swap() > 0) {
    ++stats.rounds;
    stats.frontier_sizes.push_back(frontier.size());
    frontier.for_each(pool, [&](NodeId u, unsigned w) {
      ++counters.applications[w];
      const Label label = labels.load(u);
      for (NodeId v : graph.out_neighbors(u)) push_label(label, v, w);
      for (NodeId v : graph.in_neighbors(u)) push_label(label, v, w);
    });
    if (variant == CcVariant::label_prop_sc) {
      // Shortcut: every node jumps one level up its label chain. A label always
      // names a node of the same component whose own label is no larger.
      pool.parallel_for(0, n, [&](NodeId v, unsigned w) {
        ++counters.applications[w];
        const Label parent = labels.load(v);
        if (labels.atomic_min(v, labels.load(parent))) frontier.activate(v);
      });
    }
  }

  counters.fold_into(stats);
  stats.wall_ms = clock.elapsed_ms();
  return {std::move(labels).values(), std::move(stats)};
}

std::string_view to_string(CcVariant v) { return v == CcVariant::label_prop_bsp ? "label_prop_bsp" : "label_prop_sc"; }

}  // namespace grainstone
