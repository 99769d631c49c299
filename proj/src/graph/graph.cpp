#include "grainstone/graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "grainstone/error.hpp"

namespace grainstone {

namespace {

void sort_adjacency(Csr& csr) {
  const std::uint64_t n = csr.offsets.size() - 1;
  std::vector<std::pair<NodeId, Weight>> scratch;
  for (std::uint64_t v = 0; v < n; ++v) {
    const auto begin = csr.offsets[v];
    const auto end = csr.offsets[v + 1];
    if (std::is_sorted(csr.dests.begin() + begin, csr.dests.begin() + end)) continue;
    if (!csr.weighted) {
      std::sort(csr.dests.begin() + begin, csr.dests.begin() + end);
      continue;
    }
    scratch.clear();
    for (auto e = begin; e < end; ++e) scratch.emplace_back(csr.dests[e], csr.weights[e]);
    std::sort(scratch.begin(), scratch.end());
    for (auto e = begin; e < end; ++e) {
      csr.dests[e] = scratch[e - begin].first;
      csr.weights[e] = scratch[e - begin].second;
    }
  }
}

void validate(const Csr& csr) {
  if (csr.offsets.empty()) throw Error(Errc::invalid_argument, "offsets must have num_nodes+1 entries");
  if (csr.offsets.front() != 0) throw Error(Errc::invalid_argument, "offsets[0] must be 0");
  if (!std::is_sorted(csr.offsets.begin(), csr.offsets.end()))
    throw Error(Errc::invalid_argument, "offsets must be non-decreasing");
  if (csr.offsets.back() != csr.dests.size())
    throw Error(Errc::invalid_argument, "offsets[num_nodes] must equal num_edges");
  const std::uint64_t n = csr.offsets.size() - 1;
  for (NodeId d : csr.dests)
    if (d >= n) throw Error(Errc::invalid_argument, "destination out of range: " + std::to_string(d));
  if (csr.weighted && csr.weights.size() != csr.dests.size())
    throw Error(Errc::invalid_argument, "weights must have num_edges entries");
}

Csr transpose_of(const Csr& csr) {
  const std::uint64_t n = csr.offsets.size() - 1;
  Csr t;
  t.weighted = csr.weighted;
  t.offsets.assign(n + 1, 0);
  for (NodeId d : csr.dests) ++t.offsets[d + 1];
  std::partial_sum(t.offsets.begin(), t.offsets.end(), t.offsets.begin());
  t.dests.resize(csr.dests.size());
  if (csr.weighted) t.weights.resize(csr.weights.size());
  std::vector<EdgeIndex> cursor(t.offsets.begin(), t.offsets.end() - 1);
  // Sources are visited in ascending order, so each transposed list comes out sorted.
  for (NodeId u = 0; u < n; ++u) {
    for (auto e = csr.offsets[u]; e < csr.offsets[u + 1]; ++e) {
      const auto slot = cursor[csr.dests[e]]++;
      t.dests[slot] = u;
      if (csr.weighted) t.weights[slot] = csr.weights[e];
    }
  }
  return t;
}

}  // namespace

Graph::Graph() : Graph(std::make_shared<Csr>(Csr{{0}, {}, {}, false}), nullptr) {}

Graph::Graph(std::shared_ptr<const Csr> out, std::shared_ptr<const Csr> in)
    : out_(std::move(out)), in_(std::move(in)) {}

Graph Graph::from_csr(std::vector<EdgeIndex> offsets, std::vector<NodeId> dests,
                      std::optional<std::vector<Weight>> weights) {
  auto csr = std::make_shared<Csr>();
  csr->offsets = std::move(offsets);
  csr->dests = std::move(dests);
  if (weights) {
    csr->weighted = true;
    csr->weights = std::move(*weights);
  }
  validate(*csr);
  sort_adjacency(*csr);
  return Graph(std::move(csr), nullptr);
}

const Csr& Graph::in_csr() const {
  if (!in_) throw Error(Errc::precondition, "graph has no in-edges; build the transpose first");
  return *in_;
}

std::uint64_t Graph::in_degree(NodeId v) const {
  const auto& in = in_csr();
  return in.offsets[v + 1] - in.offsets[v];
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
  const auto& in = in_csr();
  return {in.dests.data() + in.offsets[v], in.offsets[v + 1] - in.offsets[v]};
}

Graph Graph::with_transpose() const {
  if (in_) return *this;
  return Graph(out_, std::make_shared<Csr>(transpose_of(*out_)));
}

Graph Graph::with_weights(std::vector<Weight> weights) const {
  if (weights.size() != num_edges())
    throw Error(Errc::invalid_argument, "weights must have num_edges entries");
  auto csr = std::make_shared<Csr>(Csr{out_->offsets, out_->dests, std::move(weights), true});
  Graph g(std::move(csr), nullptr);
  return in_ ? g.with_transpose() : g;
}

Graph Graph::without_transpose() const { return Graph(out_, nullptr); }

bool Graph::operator==(const Graph& other) const {
  if (*out_ != *other.out_) return false;
  if (has_in_edges() != other.has_in_edges()) return false;
  return !in_ || *in_ == *other.in_;
}

Graph build_from_edges(std::uint64_t num_nodes, std::span<const std::pair<NodeId, NodeId>> edges,
                       std::span<const Weight> weights, const EdgeListOptions& options,
                       bool weighted) {
  weighted = weighted || !weights.empty();
  if (!weights.empty() && weights.size() != edges.size())
    throw Error(Errc::invalid_argument, "weights must be parallel to edges");

  struct Entry {
    NodeId src, dst;
    Weight w;
  };
  std::vector<Entry> entries;
  entries.reserve(edges.size() * (options.symmetrize ? 2 : 1));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= num_nodes || v >= num_nodes)
      throw Error(Errc::invalid_argument, "edge endpoint out of range");
    if (options.remove_self_loops && u == v) continue;
    const Weight w = weights.empty() ? 0 : weights[i];
    entries.push_back({u, v, w});
    if (options.symmetrize && u != v) entries.push_back({v, u, w});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.src, x.dst, x.w) < std::tie(y.src, y.dst, y.w);
  });
  if (options.dedupe) {
    // Sorted by weight within (src, dst), so the first copy carries the minimum.
    auto last = std::unique(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      return x.src == y.src && x.dst == y.dst;
    });
    entries.erase(last, entries.end());
  }

  std::vector<EdgeIndex> offsets(num_nodes + 1, 0);
  std::vector<NodeId> dests(entries.size());
  std::vector<Weight> ws;
  if (weighted) ws.resize(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ++offsets[entries[i].src + 1];
    dests[i] = entries[i].dst;
    if (weighted) ws[i] = entries[i].w;
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  if (weighted) return Graph::from_csr(std::move(offsets), std::move(dests), std::move(ws));
  return Graph::from_csr(std::move(offsets), std::move(dests));
}

Graph reverse(const Graph& graph) {
  Csr t = transpose_of(graph.out_csr());
  if (t.weighted) return Graph::from_csr(std::move(t.offsets), std::move(t.dests), std::move(t.weights));
  return Graph::from_csr(std::move(t.offsets), std::move(t.dests));
}

Graph build_transpose(const Graph& graph) { return graph.with_transpose(); }

Graph symmetrize(const Graph& graph) {
  const auto& csr = graph.out_csr();
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(graph.num_edges());
  for (NodeId u = 0; u < graph.num_nodes(); ++u)
    for (NodeId v : graph.out_neighbors(u)) edges.emplace_back(u, v);
  EdgeListOptions opts{.symmetrize = true, .dedupe = true, .remove_self_loops = true};
  return build_from_edges(graph.num_nodes(), edges, csr.weights, opts, csr.weighted);
}

std::uint64_t hash_csr(const Graph& graph) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (value >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  const auto& csr = graph.out_csr();
  mix(graph.num_nodes(), 8);
  mix(graph.num_edges(), 8);
  for (auto o : csr.offsets) mix(o, 8);
  for (auto d : csr.dests) mix(d, 8);
  mix(csr.weighted ? 1 : 0, 1);
  for (auto w : csr.weights) mix(w, 4);
  return h;
}

}  // namespace grainstone
