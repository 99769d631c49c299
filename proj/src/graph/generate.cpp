#include <cmath>
#include <random>

#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"

namespace grainstone {

namespace {

// mt19937_64 output is fully specified by the standard; the distributions are
// not, so the conversions below are done by hand to stay bit-reproducible.
double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph generate_rmat(const RmatParams& params) {
  const double sum = params.a + params.b + params.c + params.d;
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(Errc::invalid_argument, "rmat probabilities must sum to 1 (got " + std::to_string(sum) + ")");
  if (params.a < 0 || params.b < 0 || params.c < 0 || params.d < 0)
    throw Error(Errc::invalid_argument, "rmat probabilities must be non-negative");
  if (params.scale > 32) throw Error(Errc::invalid_argument, "rmat scale must be <= 32");

  const std::uint64_t n = std::uint64_t{1} << params.scale;
  const std::uint64_t samples = params.edge_factor * n;
  const double ab = params.a + params.b;
  const double abc = ab + params.c;

  std::mt19937_64 rng(params.seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    NodeId src = 0;
    NodeId dst = 0;
    for (std::uint32_t bit = 0; bit < params.scale; ++bit) {
      const double r = unit_interval(rng);
      src <<= 1;
      dst <<= 1;
      if (r < params.a) {
      } else if (r < ab) {
        dst |= 1;
      } else if (r < abc) {
        src |= 1;
      } else {
        src |= 1;
        dst |= 1;
      }
    }
    edges.emplace_back(src, dst);
  }
  return build_from_edges(n, edges, {}, {.symmetrize = false, .dedupe = true, .remove_self_loops = true});
}

Graph assign_random_weights(const Graph& graph, std::uint64_t seed, std::uint32_t max_weight) {
  if (max_weight < 1) throw Error(Errc::invalid_argument, "max_weight must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Weight> weights(graph.num_edges());
  for (auto& w : weights) w = static_cast<Weight>(rng() % max_weight) + 1;
  return graph.with_weights(std::move(weights));
}

}  // namespace grainstone
