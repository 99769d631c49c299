#include <fstream>
#include <numeric>

#include "doctest.h"
#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"
#include "grainstone/oracle.hpp"
#include "support/graphs.hpp"

using namespace grainstone;
using namespace grainstone::testing;

namespace {

void require_well_formed(const Csr& csr, std::uint64_t n) {
  REQUIRE(csr.offsets.size() == n + 1);
  CHECK(csr.offsets.front() == 0);
  CHECK(csr.offsets.back() == csr.dests.size());
  for (std::uint64_t v = 0; v < n; ++v) {
    REQUIRE(csr.offsets[v] <= csr.offsets[v + 1]);
    for (auto e = csr.offsets[v]; e < csr.offsets[v + 1]; ++e) {
      REQUIRE(csr.dests[e] < n);
      if (e > csr.offsets[v]) REQUIRE(csr.dests[e - 1] <= csr.dests[e]);
    }
  }
  if (csr.weighted) CHECK(csr.weights.size() == csr.dests.size());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("from_csr sorts adjacency and carries weights along") {
  const auto g = Graph::from_csr({0, 3, 3}, {1, 0, 1}, std::vector<Weight>{7, 8, 9});
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 3);
  const auto n = g.out_neighbors(0);
  const auto w = g.out_weights(0);
  CHECK(std::vector<NodeId>(n.begin(), n.end()) == std::vector<NodeId>{0, 1, 1});
  CHECK(w[0] == 8);
  CHECK(std::min(w[1], w[2]) == 7);
}

TEST_CASE("from_csr rejects malformed arrays") {
  CHECK_THROWS_AS(Graph::from_csr({}, {}), Error);
  CHECK_THROWS_AS(Graph::from_csr({1, 1}, {0}), Error);
  CHECK_THROWS_AS(Graph::from_csr({0, 2, 1}, {0, 1}), Error);
  CHECK_THROWS_AS(Graph::from_csr({0, 1}, {5}), Error);
  CHECK_THROWS_AS(Graph::from_csr({0, 1}, {0}, std::vector<Weight>{1, 2}), Error);
}

TEST_CASE("edge list ingestion") {
  TempDir dir;
  SUBCASE("chain") {
    write_text(dir / "g.txt", "0 1\n1 2\n");
    const auto g = ingest_edge_list(dir / "g.txt", false, false);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK_FALSE(g.has_weights());
  }
  SUBCASE("dedupe merges parallel edges") {
    write_text(dir / "g.txt", "0 1\n0 1\n");
    CHECK(ingest_edge_list(dir / "g.txt", false, true).num_edges() == 1);
    CHECK(ingest_edge_list(dir / "g.txt", false, false).num_edges() == 2);
  }
  SUBCASE("dedupe keeps the minimum weight") {
    write_text(dir / "g.txt", "0 1 9\n0 1 4\n0 1 6\n");
    const auto g = ingest_edge_list(dir / "g.txt", false, true);
    REQUIRE(g.num_edges() == 1);
    CHECK(g.out_weights(0)[0] == 4);
  }
  SUBCASE("weights without symmetrize") {
    write_text(dir / "g.txt", "0 1 5\n1 0 5\n");
    const auto g = ingest_edge_list(dir / "g.txt", false, false);
    CHECK(g.num_edges() == 2);
    CHECK(g.out_csr().weights == std::vector<Weight>{5, 5});
  }
  SUBCASE("symmetrize adds reverse edges") {
    write_text(dir / "g.txt", "# comment\n0 1\n\n% other comment\n1 2\n");
    const auto g = ingest_edge_list(dir / "g.txt", true, false);
    CHECK(g.num_edges() == 4);
    CHECK(g.out_degree(1) == 2);
  }
  SUBCASE("parse errors name the line") {
    write_text(dir / "g.txt", "0 1\n1 x\n");
    try {
      ingest_edge_list(dir / "g.txt", false, false);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
      CHECK(e.code() == Errc::format);
    }
  }
  SUBCASE("negative ids are rejected") {
    write_text(dir / "g.txt", "0 -1\n");
    try {
      ingest_edge_list(dir / "g.txt", false, false);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("negative") != std::string::npos);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(ingest_edge_list(dir / "absent.txt", false, false), Error); }
}

TEST_CASE("rmat generation") {
  SUBCASE("scale 0 is a single node without edges") {
    const auto g = rmat(0, 16, 1);
    CHECK(g.num_nodes() == 1);
    CHECK(g.num_edges() == 0);
  }
  SUBCASE("node count is 2^scale and edges never exceed the sample count") {
    const auto g = rmat(10, 16, 3);
    CHECK(g.num_nodes() == 1024);
    CHECK(g.num_edges() <= 16u * 1024u);
    require_well_formed(g.out_csr(), g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      const auto n = g.out_neighbors(v);
      CHECK(std::adjacent_find(n.begin(), n.end()) == n.end());
      CHECK(std::find(n.begin(), n.end(), v) == n.end());
    }
  }
  SUBCASE("bitwise deterministic per seed") {
    CHECK(rmat(10, 8, 5) == rmat(10, 8, 5));
    CHECK(hash_csr(rmat(10, 8, 5)) == hash_csr(rmat(10, 8, 5)));
    CHECK_FALSE(rmat(10, 8, 5) == rmat(10, 8, 6));
  }
  SUBCASE("probabilities must sum to one") {
    RmatParams p;
    p.scale = 4;
    p.a = 0.6;
    CHECK_THROWS_AS(generate_rmat(p), Error);
    p.a = 0.57 + 1e-12;
    CHECK_NOTHROW(generate_rmat(p));
  }
  SUBCASE("scale above 32 is rejected") {
    RmatParams p;
    p.scale = 33;
    CHECK_THROWS_AS(generate_rmat(p), Error);
  }
  SUBCASE("scale 14, edge factor 16, seed 42 golden values") {
    const auto g = rmat(14, 16, 42);
    const auto meta = compute_meta(g);
    CHECK(g.num_nodes() == 16384);
    CHECK(g.num_edges() == 228440);
    CHECK(meta.max_out_degree_node == 0);
    CHECK(meta.max_out_degree == 2439);
    const double mean = static_cast<double>(g.num_edges()) / static_cast<double>(g.num_nodes());
    CHECK(static_cast<double>(meta.max_out_degree) >= 50.0 * mean);
  }
}

TEST_CASE("random weights") {
  const auto g = random_graph(200, 1000, 9);
  SUBCASE("max weight 1 gives unit weights") {
    const auto w = assign_random_weights(g, 3, 1);
    CHECK(std::all_of(w.out_csr().weights.begin(), w.out_csr().weights.end(), [](Weight x) { return x == 1; }));
  }
  SUBCASE("range and determinism") {
    const auto a = assign_random_weights(g, 1);
    const auto b = assign_random_weights(g, 1);
    const auto c = assign_random_weights(g, 2);
    CHECK(a.out_csr().weights == b.out_csr().weights);
    CHECK(a.out_csr().weights != c.out_csr().weights);
    for (Weight x : a.out_csr().weights) {
      CHECK(x >= 1);
      CHECK(x <= 255);
    }
    CHECK(a.out_csr().dests == g.out_csr().dests);
  }
  SUBCASE("max weight 0 is rejected") { CHECK_THROWS_AS(assign_random_weights(g, 1, 0), Error); }
}

TEST_CASE("transpose") {
  SUBCASE("single edge") {
    const auto t = build_transpose(graph_of(2, {{0, 1}}));
    REQUIRE(t.has_in_edges());
    CHECK(t.in_degree(1) == 1);
    CHECK(t.in_neighbors(1)[0] == 0);
    CHECK(t.in_degree(0) == 0);
  }
  SUBCASE("involution and degree sums") {
    const auto g = assign_random_weights(rmat(10, 8, 11), 4);
    const auto r = reverse(g);
    CHECK(reverse(r) == g);
    const auto t = build_transpose(g);
    require_well_formed(t.in_csr(), g.num_nodes());
    std::uint64_t in_sum = 0, out_sum = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      in_sum += t.in_degree(v);
      out_sum += t.out_degree(v);
    }
    CHECK(in_sum == g.num_edges());
    CHECK(out_sum == g.num_edges());
    CHECK(t.in_csr().weights.size() == g.num_edges());
  }
  SUBCASE("every out-edge appears as an in-entry") {
    const auto g = build_transpose(random_graph(50, 300, 2));
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      for (NodeId v : g.out_neighbors(u)) {
        const auto in = g.in_neighbors(v);
        CHECK(std::binary_search(in.begin(), in.end(), u));
      }
  }
  SUBCASE("in-edges are absent until requested") {
    const auto g = graph_of(2, {{0, 1}});
    CHECK_FALSE(g.has_in_edges());
    CHECK_THROWS_AS(g.in_csr(), Error);
    CHECK(g.with_transpose().without_transpose() == g);
  }
}

TEST_CASE("symmetrize") {
  const auto g = symmetrize(graph_of(4, {{0, 1}, {1, 0}, {2, 2}, {2, 3}}));
  CHECK(g.num_edges() == 4);
  CHECK(g.out_degree(2) == 1);
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v : g.out_neighbors(u)) {
      const auto back = g.out_neighbors(v);
      CHECK(std::binary_search(back.begin(), back.end(), u));
    }
}

TEST_CASE("graph meta") {
  SUBCASE("star") {
    std::vector<Edge> edges;
    for (NodeId v = 1; v <= 9; ++v) edges.emplace_back(0, v);
    const auto m = compute_meta(graph_of(10, edges));
    CHECK(m.max_out_degree_node == 0);
    CHECK(m.max_out_degree == 9);
    CHECK(m.max_in_degree == 1);
  }
  SUBCASE("100-node directed path") { CHECK(compute_meta(directed_path(100)).estimated_diameter == 99); }
  SUBCASE("ties break toward the smallest id") {
    const auto m = compute_meta(graph_of(4, {{2, 0}, {2, 1}, {1, 0}, {1, 3}}));
    CHECK(m.max_out_degree_node == 1);
    CHECK(m.max_out_degree == 2);
  }
  SUBCASE("max out degree equals a naive scan") {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto g = random_graph(300, 2000, seed);
      std::uint64_t best = 0;
      NodeId arg = 0;
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (g.out_degree(v) > best) best = g.out_degree(v), arg = v;
      const auto m = compute_meta(g);
      CHECK(m.max_out_degree == best);
      CHECK(m.max_out_degree_node == arg);
    }
  }
  SUBCASE("diameter estimate lies within [exact/2, exact] on scale-10 rmat") {
    for (std::uint64_t seed : {1, 2}) {
      const auto g = rmat(10, 4, seed);
      std::uint64_t exact = 0;
      for (NodeId s = 0; s < g.num_nodes(); ++s)
        for (auto d : oracle::bfs(g, s))
          if (d != oracle::kUnreached) exact = std::max(exact, d);
      const auto est = compute_meta(g).estimated_diameter;
      CHECK(est <= exact);
      CHECK(2 * est >= exact);
    }
  }
  SUBCASE("empty graph") {
    const auto m = compute_meta(Graph());
    CHECK(m.max_out_degree == 0);
    CHECK(m.estimated_diameter == 0);
  }
}

TEST_CASE("csr hash tracks content") {
  const auto g = rmat(8, 4, 1);
  CHECK(hash_csr(g) == hash_csr(rmat(8, 4, 1)));
  CHECK(hash_csr(g) != hash_csr(assign_random_weights(g, 1)));
}
