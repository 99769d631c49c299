#include <cmath>
#include <numeric>

#include "doctest.h"
#include "grainstone/algorithms.hpp"
#include "grainstone/error.hpp"
#include "grainstone/oracle.hpp"
#include "support/graphs.hpp"

using namespace grainstone;
using namespace grainstone::testing;

namespace {

constexpr SsspVariant kSsspVariants[] = {SsspVariant::delta_async, SsspVariant::data_driven_bsp,
                                         SsspVariant::bellman_ford_topo};
constexpr unsigned kWorkerCounts[] = {1, 2, 8};

Graph sssp_example() {
  return weighted_graph_of(4, {{0, 1}, {0, 2}, {2, 1}, {1, 3}, {2, 3}}, {5, 1, 1, 2, 7});
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("bfs") {
  SUBCASE("chain") {
    const auto g = build_transpose(directed_path(5));
    for (auto variant : {BfsVariant::push_bsp_sparse, BfsVariant::direction_opt})
      CHECK(bfs(g, 0, variant, 1).labels == std::vector<Label>{0, 1, 2, 3, 4});
  }
  SUBCASE("diamond") {
    const auto g = build_transpose(graph_of(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}));
    CHECK(oracle::bfs(g, 0) == std::vector<std::uint64_t>{0, 1, 1, 2, 3});
    for (auto variant : {BfsVariant::push_bsp_sparse, BfsVariant::direction_opt})
      CHECK(bfs(g, 0, variant, 2).labels == std::vector<Label>{0, 1, 1, 2, 3});
  }
  SUBCASE("unreachable nodes keep the sentinel") {
    const auto r = bfs(graph_of(3, {{1, 2}}), 0, BfsVariant::push_bsp_sparse, 1);
    CHECK(r.labels == std::vector<Label>{0, kUnreached, kUnreached});
    CHECK(kUnreached == std::numeric_limits<std::uint64_t>::max());
  }
  SUBCASE("scale-12 rmat from the max-out-degree node") {
    const auto g = build_transpose(rmat(12, 16, 7));
    const auto src = compute_meta(g).max_out_degree_node;
    const auto expected = oracle::bfs(g, src);
    for (unsigned w : kWorkerCounts) {
      const auto push = bfs(g, src, BfsVariant::push_bsp_sparse, w);
      const auto dopt = bfs(g, src, BfsVariant::direction_opt, w);
      CHECK(push.labels == expected);
      CHECK(dopt.labels == push.labels);
      CHECK(push.stats.frontier_sizes.size() == push.stats.rounds);
    }
  }
  SUBCASE("direction_opt actually pulls on a dense graph") {
    const auto g = build_transpose(rmat(12, 16, 7));
    const auto src = compute_meta(g).max_out_degree_node;
    const auto push = bfs(g, src, BfsVariant::push_bsp_sparse, 1);
    const auto dopt = bfs(g, src, BfsVariant::direction_opt, 1);
    CHECK(dopt.stats.edges_relaxed < push.stats.edges_relaxed);
  }
  SUBCASE("single-worker counters are exact") {
    const auto g = directed_path(10);
    const auto r = bfs(g, 0, BfsVariant::push_bsp_sparse, 1);
    CHECK(r.stats.operator_applications == 10);
    CHECK(r.stats.edges_relaxed == 9);
    CHECK(r.stats.rounds == 10);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(bfs(directed_path(3), 0, BfsVariant::direction_opt, 1), Error);
    CHECK_THROWS_AS(bfs(directed_path(3), 3, BfsVariant::push_bsp_sparse, 1), Error);
  }
}

TEST_CASE("sssp") {
  SUBCASE("worked example") {
    const auto g = sssp_example();
    CHECK(oracle::dijkstra(g, 0) == std::vector<std::uint64_t>{0, 2, 1, 4});
    for (auto variant : kSsspVariants)
      for (unsigned w : kWorkerCounts) CHECK(sssp(g, 0, variant, 3, w).labels == std::vector<Label>{0, 2, 1, 4});
  }
  SUBCASE("single node") {
    const auto g = Graph::from_csr({0, 0}, {}, std::vector<Weight>{});
    for (auto variant : kSsspVariants) CHECK(sssp(g, 0, variant, 1, 1).labels == std::vector<Label>{0});
  }
  SUBCASE("unit weights reduce to bfs") {
    const auto base = rmat(10, 8, 4);
    const auto g = assign_random_weights(base, 1, 1);
    const auto hops = oracle::bfs(base, 0);
    for (auto variant : kSsspVariants)
      for (std::uint64_t delta : {1, 3, 50}) CHECK(sssp(g, 0, variant, delta, 2).labels == hops);
  }
  SUBCASE("random weighted graphs match dijkstra at every delta and worker count") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto g = assign_random_weights(rmat(11, 8, seed), seed);
      const auto src = compute_meta(g).max_out_degree_node;
      const auto expected = oracle::dijkstra(g, src);
      for (auto variant : kSsspVariants)
        for (unsigned w : kWorkerCounts)
          for (std::uint64_t delta : {std::uint64_t{1}, default_delta(g), std::uint64_t{1000}})
            CHECK(sssp(g, src, variant, delta, w).labels == expected);
    }
  }
  SUBCASE("bellman-ford rounds never exceed the node count") {
    const auto g = assign_random_weights(directed_path(50), 2);
    const auto r = sssp(g, 0, SsspVariant::bellman_ford_topo, 1, 1);
    CHECK(r.stats.rounds <= g.num_nodes());
  }
  SUBCASE("default delta is the mean weight, at least 1") {
    CHECK(default_delta(weighted_graph_of(2, {{0, 1}, {1, 0}}, {4, 9})) == 6);
    CHECK(default_delta(weighted_graph_of(2, {{0, 1}}, {0})) == 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sssp(directed_path(3), 0, SsspVariant::delta_async, 1, 1), Error);
    CHECK_THROWS_AS(sssp(sssp_example(), 0, SsspVariant::delta_async, 0, 1), Error);
    CHECK_THROWS_AS(sssp(sssp_example(), 9, SsspVariant::data_driven_bsp, 1, 1), Error);
  }
}

TEST_CASE("connected components") {
  SUBCASE("triangle plus edge") {
    const auto g = graph_of(5, {{0, 1}, {1, 2}, {2, 0}, {4, 3}});
    CHECK(oracle::cc_unionfind(g) == std::vector<std::uint64_t>{0, 0, 0, 3, 3});
    for (auto variant : {CcVariant::label_prop_bsp, CcVariant::label_prop_sc})
      CHECK(connected_components(g, variant, 2).labels == std::vector<Label>{0, 0, 0, 3, 3});
  }
  SUBCASE("isolated nodes label themselves") {
    const auto g = graph_of(4, {});
    for (auto variant : {CcVariant::label_prop_bsp, CcVariant::label_prop_sc})
      CHECK(connected_components(g, variant, 1).labels == std::vector<Label>{0, 1, 2, 3});
  }
  SUBCASE("direction is ignored") {
    const auto g = graph_of(3, {{2, 1}, {1, 0}});
    CHECK(connected_components(g, CcVariant::label_prop_sc, 1).labels == std::vector<Label>{0, 0, 0});
  }
  SUBCASE("empty graph") { CHECK(oracle::cc_unionfind(Graph()).empty()); }
  SUBCASE("scale-12 rmat matches union-find, shortcutting never adds rounds") {
    for (std::uint64_t seed : {1, 2}) {
      const auto g = build_transpose(symmetrize(rmat(12, 4, seed)));
      const auto expected = oracle::cc_unionfind(g);
      for (unsigned w : kWorkerCounts) {
        const auto bsp = connected_components(g, CcVariant::label_prop_bsp, w);
        const auto sc = connected_components(g, CcVariant::label_prop_sc, w);
        CHECK(bsp.labels == expected);
        CHECK(sc.labels == expected);
        CHECK(sc.stats.rounds <= bsp.stats.rounds);
      }
    }
  }
  SUBCASE("shortcutting helps on a long path") {
    const auto g = directed_path(200);
    const auto bsp = connected_components(g, CcVariant::label_prop_bsp, 1);
    const auto sc = connected_components(g, CcVariant::label_prop_sc, 1);
    CHECK(sc.labels == bsp.labels);
    CHECK(sc.stats.rounds <= bsp.stats.rounds);
  }
}

TEST_CASE("pagerank") {
  SUBCASE("directed cycle ranks are uniform") {
    const auto g = build_transpose(directed_cycle(37));
    const auto r = pagerank(g, {}, 2);
    for (double x : r.ranks) CHECK(std::abs(x - 1.0 / 37) <= 1e-12);
  }
  SUBCASE("zero rounds returns the initial ranks") {
    const auto g = build_transpose(random_graph(20, 60, 1));
    const auto r = pagerank(g, {1e-6, 0, 0.85}, 1);
    CHECK(r.stats.rounds == 0);
    for (double x : r.ranks) CHECK(x == 1.0 / 20);
  }
  SUBCASE("mass is conserved every round") {
    const auto g = build_transpose(rmat(9, 4, 3));
    for (std::uint64_t rounds = 0; rounds <= 12; ++rounds) {
      const auto r = pagerank(g, {0.0, rounds, 0.85}, 2);
      CHECK(r.stats.rounds == rounds);
      CHECK(std::abs(sum(r.ranks) - 1.0) < 1e-6);
    }
  }
  SUBCASE("matches a long power iteration on 100-node random graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = build_transpose(random_graph(100, 400, seed));
      const auto r = pagerank(g, {}, 2);
      const auto expected = oracle::pagerank_power(g, 0.85, 200);
      double worst = 0;
      for (std::size_t i = 0; i < r.ranks.size(); ++i) worst = std::max(worst, std::abs(r.ranks[i] - expected[i]));
      CHECK(worst < 1e-4);
    }
  }
  SUBCASE("equal round counts match the oracle tightly and independent of workers") {
    const auto g = build_transpose(rmat(10, 8, 2));
    const auto one = pagerank(g, {}, 1);
    const auto eight = pagerank(g, {}, 8);
    CHECK(one.ranks == eight.ranks);
    const auto expected = oracle::pagerank_power(g, 0.85, one.stats.rounds);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(one.ranks[i] - expected[i]) <= 1e-12);
  }
  SUBCASE("requires in-edges") { CHECK_THROWS_AS(pagerank(directed_cycle(3), {}, 1), Error); }
}

TEST_CASE("kcore") {
  SUBCASE("triangle with k=2") {
    const auto g = undirected_of(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(kcore(g, 2, 1).in_core == std::vector<std::uint8_t>{1, 1, 1});
  }
  SUBCASE("path of three with k=2") {
    const auto g = undirected_of(3, {{0, 1}, {1, 2}});
    CHECK(kcore(g, 2, 1).in_core == std::vector<std::uint8_t>{0, 0, 0});
  }
  SUBCASE("k=0 keeps every node") { CHECK(kcore(undirected_of(4, {{0, 1}}), 0, 1).in_core == std::vector<std::uint8_t>(4, 1)); }
  SUBCASE("scale-12 rmat, k=10, is the oracle's fixed point") {
    const auto g = symmetrize(rmat(12, 16, 5));
    const auto expected = oracle::kcore(g, 10);
    CHECK(std::count(expected.begin(), expected.end(), 1) > 0);
    for (unsigned w : kWorkerCounts) {
      const auto r = kcore(g, 10, w);
      CHECK(r.in_core == expected);
      // Every in-core node keeps at least k in-core neighbours.
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (!r.in_core[v]) continue;
        std::uint64_t alive = 0;
        for (NodeId u : g.out_neighbors(v)) alive += r.in_core[u];
        REQUIRE(alive >= 10);
      }
    }
  }
  SUBCASE("removal replay: excluded nodes fall below k in removal order") {
    const auto g = symmetrize(rmat(10, 8, 9));
    const std::uint64_t k = 8;
    const auto r = kcore(g, k, 2);
    std::vector<std::uint64_t> degree(g.num_nodes());
    std::vector<std::uint8_t> removed(g.num_nodes(), 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) degree[v] = g.out_degree(v);
    // Peel excluded nodes greedily; each must be below k when peeled.
    bool progress = true;
    while (progress) {
      progress = false;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (r.in_core[v] || removed[v] || degree[v] >= k) continue;
        removed[v] = 1;
        progress = true;
        for (NodeId u : g.out_neighbors(v)) --degree[u];
      }
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(removed[v] == !r.in_core[v]);
  }
}

TEST_CASE("betweenness") {
  SUBCASE("path") {
    const auto r = betweenness(directed_path(3), 0, 1);
    CHECK(r.scores == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(oracle::bc(directed_path(3), 0) == std::vector<double>{0.0, 1.0, 0.0});
  }
  SUBCASE("star leaves score zero") {
    const auto r = betweenness(graph_of(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}), 0, 2);
    for (double x : r.scores) CHECK(x == 0.0);
  }
  SUBCASE("diamond splits dependency by path counts") {
    const auto g = graph_of(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
    const auto r = betweenness(g, 0, 1);
    CHECK(r.scores[1] == doctest::Approx(1.0));
    CHECK(r.scores[2] == doctest::Approx(1.0));
    CHECK(r.scores[3] == doctest::Approx(1.0));
    CHECK(r.scores[0] == 0.0);
  }
  SUBCASE("scale-10 rmat within 1e-9 of the oracle") {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto g = rmat(10, 16, seed);
      const auto src = compute_meta(g).max_out_degree_node;
      const auto expected = oracle::bc(g, src);
      for (unsigned w : kWorkerCounts) {
        const auto r = betweenness(g, src, w);
        double worst = 0;
        for (std::size_t i = 0; i < expected.size(); ++i) worst = std::max(worst, std::abs(r.scores[i] - expected[i]));
        CHECK(worst < 1e-9);
        CHECK(r.scores[src] == 0.0);
      }
    }
  }
}

TEST_CASE("triangle counting") {
  SUBCASE("K4") { CHECK(triangle_count(complete_graph(4), 1).triangles == 4); }
  SUBCASE("trees have none") {
    const auto g = undirected_of(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    CHECK(triangle_count(g, 2).triangles == 0);
    CHECK(oracle::triangles(g) == 0);
  }
  SUBCASE("K6 and the oracles agree") {
    CHECK(triangle_count(complete_graph(6), 2).triangles == 20);
    CHECK(oracle::triangles(complete_graph(6)) == 20);
  }
  SUBCASE("scale-10 rmat matches the brute-force oracle") {
    for (std::uint64_t seed : {1, 2}) {
      const auto g = symmetrize(rmat(10, 16, seed));
      const auto expected = oracle::triangles(g);
      CHECK(expected == triangles_by_edge_iteration(g));
      for (unsigned w : kWorkerCounts) CHECK(triangle_count(g, w).triangles == expected);
    }
  }
  SUBCASE("oracle refuses graphs above 1024 nodes") { CHECK_THROWS_AS(oracle::triangles(graph_of(1025, {})), Error); }
  SUBCASE("self-loops are rejected") { CHECK_THROWS_AS(triangle_count(graph_of(2, {{0, 0}}), 1), Error); }
  SUBCASE("duplicate edges are rejected") {
    CHECK_THROWS_AS(triangle_count(graph_of(2, {{0, 1}, {0, 1}, {1, 0}}), 1), Error);
  }
}

TEST_CASE("variant names") {
  CHECK(to_string(BfsVariant::direction_opt) == "direction_opt");
  CHECK(to_string(SsspVariant::bellman_ford_topo) == "bellman_ford_topo");
  CHECK(to_string(CcVariant::label_prop_sc) == "label_prop_sc");
}
