#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "grainstone/graph.hpp"

namespace grainstone {

using Label = std::uint64_t;
inline constexpr Label kUnreached = std::numeric_limits<Label>::max();

// Per-node labels with atomic monotone updates.
class LabelArray {
 public:
  LabelArray() = default;
  LabelArray(std::uint64_t size, Label initial) : values_(size, initial) {}

  std::uint64_t size() const { return values_.size(); }
  Label load(NodeId v) const {
    return std::atomic_ref<Label>(const_cast<Label&>(values_[v])).load(std::memory_order_relaxed);
  }
  void store(NodeId v, Label value) { std::atomic_ref<Label>(values_[v]).store(value, std::memory_order_relaxed); }

  // Lowers values[v] to `proposed` if smaller. True iff this call lowered it.
  bool atomic_min(NodeId v, Label proposed) {
    std::atomic_ref<Label> slot(values_[v]);
    Label current = slot.load(std::memory_order_relaxed);
    while (proposed < current) {
      if (slot.compare_exchange_weak(current, proposed, std::memory_order_relaxed)) return true;
    }
    return false;
  }

  bool compare_exchange(NodeId v, Label expected, Label desired) {
    return std::atomic_ref<Label>(values_[v]).compare_exchange_strong(expected, desired, std::memory_order_relaxed);
  }

  const std::vector<Label>& values() const& { return values_; }
  std::vector<Label> values() && { return std::move(values_); }

 private:
  std::vector<Label> values_;
};

struct RunStats {
  std::uint64_t rounds = 0;
  std::uint64_t operator_applications = 0;
  std::uint64_t edges_relaxed = 0;
  std::vector<std::uint64_t> frontier_sizes;  // bulk-synchronous variants only
  double wall_ms = 0.0;
};

enum class BfsVariant { push_bsp_sparse, direction_opt };
enum class SsspVariant { delta_async, data_driven_bsp, bellman_ford_topo };
enum class CcVariant { label_prop_bsp, label_prop_sc };

struct DirectionOptParams {
  double alpha = 15.0;
  double beta = 18.0;
};

struct LabelResult {
  std::vector<Label> labels;
  RunStats stats;
};

struct RankResult {
  std::vector<double> ranks;
  RunStats stats;
};

struct CoreResult {
  std::vector<std::uint8_t> in_core;
  RunStats stats;
};

struct ScoreResult {
  std::vector<double> scores;
  RunStats stats;
};

struct CountResult {
  std::uint64_t triangles = 0;
  RunStats stats;
};

struct PageRankParams {
  double tolerance = 1e-6;
  std::uint64_t max_rounds = 100;
  double damping = 0.85;
};

inline constexpr std::uint64_t kDefaultCoreK = 100;

// All entry points take a worker count; 0 is treated as 1.

// Hop distances from `source`; kUnreached elsewhere. direction_opt needs in-edges.
LabelResult bfs(const Graph& graph, NodeId source, BfsVariant variant, unsigned workers,
                const DirectionOptParams& params = {});

// Weighted shortest distances. `delta` is the bucket width of delta_async.
LabelResult sssp(const Graph& graph, NodeId source, SsspVariant variant, std::uint64_t delta,
                 unsigned workers);

// max(1, mean edge weight), the default bucket width.
std::uint64_t default_delta(const Graph& graph);

// Minimum node id of each weakly connected component. Traverses out- and
// in-edges; the transpose is built here when the graph lacks one.
LabelResult connected_components(const Graph& graph, CcVariant variant, unsigned workers);

// Topology-driven pull iteration; requires in-edges. Ranks start at 1/n and
// dangling mass is spread uniformly, so they sum to 1 every round.
RankResult pagerank(const Graph& graph, const PageRankParams& params, unsigned workers);

// Membership in the k-core of the graph's out-adjacency (callers pass a
// symmetric graph for the undirected core).
CoreResult kcore(const Graph& graph, std::uint64_t k, unsigned workers);

// Single-source dependency scores (unweighted).
ScoreResult betweenness(const Graph& graph, NodeId source, unsigned workers);

// Exact triangle count of a symmetric graph with strictly sorted adjacency.
CountResult triangle_count(const Graph& graph, unsigned workers);

std::string_view to_string(BfsVariant v);
std::string_view to_string(SsspVariant v);
std::string_view to_string(CcVariant v);

}  // namespace grainstone
