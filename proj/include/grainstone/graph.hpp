#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace grainstone {

using NodeId = std::uint64_t;
using EdgeIndex = std::uint64_t;
using Weight = std::uint32_t;

inline constexpr std::uint32_t kDefaultMaxWeight = 255;

// One direction of adjacency. offsets has num_nodes+1 entries, offsets[0] = 0.
struct Csr {
  std::vector<EdgeIndex> offsets;
  std::vector<NodeId> dests;
  std::vector<Weight> weights;  // size num_edges when weighted, else empty
  bool weighted = false;

  bool operator==(const Csr&) const = default;
};

// Immutable CSR graph with optional weights and an optional transposed copy.
// Copies share storage; nothing is ever mutated after construction.
class Graph {
 public:
  Graph();

  // Validates the arrays, sorts each adjacency list ascending (weights move
  // with their destinations) and throws Error on any malformed input.
  static Graph from_csr(std::vector<EdgeIndex> offsets, std::vector<NodeId> dests,
                        std::optional<std::vector<Weight>> weights = std::nullopt);

  std::uint64_t num_nodes() const { return out_->offsets.size() - 1; }
  std::uint64_t num_edges() const { return out_->dests.size(); }
  bool has_weights() const { return out_->weighted; }
  bool has_in_edges() const { return in_ != nullptr; }

  const Csr& out_csr() const { return *out_; }
  const Csr& in_csr() const;

  std::uint64_t out_degree(NodeId v) const { return out_->offsets[v + 1] - out_->offsets[v]; }
  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_->dests.data() + out_->offsets[v], out_degree(v)};
  }
  std::span<const Weight> out_weights(NodeId v) const {
    return {out_->weights.data() + out_->offsets[v], out_degree(v)};
  }
  std::uint64_t in_degree(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;

  // Same graph with in_csr populated. No-op if already present.
  Graph with_transpose() const;
  // Same topology with the given per-edge weights (length num_edges).
  Graph with_weights(std::vector<Weight> weights) const;
  // Drops the in-edge copy.
  Graph without_transpose() const;

  bool operator==(const Graph& other) const;

 private:
  Graph(std::shared_ptr<const Csr> out, std::shared_ptr<const Csr> in);

  std::shared_ptr<const Csr> out_;
  std::shared_ptr<const Csr> in_;
};

struct GraphMeta {
  NodeId max_out_degree_node = 0;
  std::uint64_t max_out_degree = 0;
  std::uint64_t max_in_degree = 0;
  std::uint64_t estimated_diameter = 0;
};

struct RmatParams {
  std::uint32_t scale = 0;
  std::uint64_t edge_factor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  std::uint64_t seed = 0;
};

struct EdgeListOptions {
  bool symmetrize = false;
  bool dedupe = false;
  bool remove_self_loops = false;
};

// Builds a graph from an edge list. Parallel edges are merged keeping the
// minimum weight when `dedupe` is set; `symmetrize` adds every reverse edge.
// `weights` is either empty (unweighted) or parallel to `edges`.
Graph build_from_edges(std::uint64_t num_nodes, std::span<const std::pair<NodeId, NodeId>> edges,
                       std::span<const Weight> weights, const EdgeListOptions& options,
                       bool weighted = false);

Graph load_csr_bin(const std::filesystem::path& path);
void write_csr_bin(const Graph& graph, const std::filesystem::path& path);
Graph ingest_edge_list(const std::filesystem::path& path, bool symmetrize, bool dedupe);

Graph generate_rmat(const RmatParams& params);
Graph assign_random_weights(const Graph& graph, std::uint64_t seed,
                            std::uint32_t max_weight = kDefaultMaxWeight);

// Edges reversed: the result's out-edges are the input's in-edges.
Graph reverse(const Graph& graph);
Graph build_transpose(const Graph& graph);
// Undirected view: both directions, no self-loops, no parallel edges.
Graph symmetrize(const Graph& graph);

GraphMeta compute_meta(const Graph& graph);

// FNV-1a over offsets, destinations and weights.
std::uint64_t hash_csr(const Graph& graph);

}  // namespace grainstone
