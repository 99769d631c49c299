#pragma once

#include <cstdint>
#include <vector>

#include "grainstone/graph.hpp"

// Slow sequential references. They share nothing with the parallel
// algorithms beyond the Graph type.
namespace grainstone::oracle {

inline constexpr std::uint64_t kUnreached = ~std::uint64_t{0};
inline constexpr std::uint64_t kMaxTriangleOracleNodes = 1024;

std::vector<std::uint64_t> bfs(const Graph& graph, NodeId source);
std::vector<std::uint64_t> dijkstra(const Graph& graph, NodeId source);
// Weakly connected components, labelled by minimum member id.
std::vector<std::uint64_t> cc_unionfind(const Graph& graph);
// Dense power iteration with the same damping/dangling convention as pagerank().
std::vector<double> pagerank_power(const Graph& graph, double damping, std::uint64_t iterations);
std::vector<std::uint8_t> kcore(const Graph& graph, std::uint64_t k);
std::vector<double> bc(const Graph& graph, NodeId source);
// Triple loop over node triples of an undirected graph; num_nodes <= 1024.
std::uint64_t triangles(const Graph& graph);

}  // namespace grainstone::oracle
