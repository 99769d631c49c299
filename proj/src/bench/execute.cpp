#include <cmath>
#include <numeric>
#include <variant>

#include "grainstone/bench.hpp"
#include "grainstone/error.hpp"
#include "grainstone/oracle.hpp"

namespace grainstone::bench {

namespace {

using Output = std::variant<LabelResult, RankResult, CoreResult, ScoreResult, CountResult>;

constexpr double kScoreTolerance = 1e-9;
constexpr double kRankTolerance = 1e-9;

Graph load_graph(const GraphSource& source) {
  if (source.kind == GraphSource::Kind::rmat) {
    RmatParams params;
    params.scale = source.scale;
    params.edge_factor = source.edge_factor;
    params.seed = source.seed;
    return generate_rmat(params);
  }
  const auto ext = source.path.extension().string();
  if (ext == ".txt" || ext == ".el" || ext == ".edges") return ingest_edge_list(source.path, false, false);
  return load_csr_bin(source.path);
}

Graph prepare_graph(const RunConfig& c) {
  Graph g = load_graph(c.graph);
  if (c.weights) {
    g = assign_random_weights(g, c.weights->seed, c.weights->max_weight);
  } else if (c.algo == Algo::sssp && !g.has_weights()) {
    g = assign_random_weights(g, WeightSpec{}.seed, WeightSpec{}.max_weight);
  }
  if (c.algo == Algo::kcore || c.algo == Algo::tc) g = symmetrize(g);
  const bool needs_in_edges =
      (c.algo == Algo::bfs && c.variant == "direction_opt") || c.algo == Algo::pr || c.algo == Algo::cc;
  if (needs_in_edges) g = build_transpose(g);
  return g;
}

Output run_once(const RunConfig& c, const Graph& g, NodeId source, std::uint64_t delta) {
  switch (c.algo) {
    case Algo::bfs:
      return bfs(g, source, c.variant == "direction_opt" ? BfsVariant::direction_opt : BfsVariant::push_bsp_sparse,
                 c.threads);
    case Algo::sssp: {
      auto variant = SsspVariant::delta_async;
      if (c.variant == "data_driven_bsp") variant = SsspVariant::data_driven_bsp;
      if (c.variant == "bellman_ford_topo") variant = SsspVariant::bellman_ford_topo;
      return sssp(g, source, variant, delta, c.threads);
    }
    case Algo::cc:
      return connected_components(g, c.variant == "label_prop_bsp" ? CcVariant::label_prop_bsp : CcVariant::label_prop_sc,
                                  c.threads);
    case Algo::pr:
      return pagerank(g, {c.tolerance, c.max_rounds, c.damping}, c.threads);
    case Algo::kcore:
      return kcore(g, c.k, c.threads);
    case Algo::bc:
      return betweenness(g, source, c.threads);
    case Algo::tc:
      return triangle_count(g, c.threads);
  }
  throw Error(Errc::invalid_argument, "unknown algorithm");
}

const RunStats& stats_of(const Output& out) {
  return std::visit([](const auto& r) -> const RunStats& { return r.stats; }, out);
}

void corrupt(Output& out) {
  std::visit(
      [](auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, LabelResult>) {
          if (r.labels.empty()) return;
          auto& x = r.labels[r.labels.size() / 2];
          x = x == kUnreached ? 0 : x + 1;
        } else if constexpr (std::is_same_v<T, RankResult>) {
          if (!r.ranks.empty()) r.ranks[r.ranks.size() / 2] += 1.0;
        } else if constexpr (std::is_same_v<T, CoreResult>) {
          if (!r.in_core.empty()) r.in_core[r.in_core.size() / 2] ^= 1;
        } else if constexpr (std::is_same_v<T, ScoreResult>) {
          if (!r.scores.empty()) r.scores[r.scores.size() / 2] += 1.0;
        } else {
          r.triangles += 1;
        }
      },
      out);
}

template <class A, class B, class Eq>
Verification compare(const std::vector<A>& got, const std::vector<B>& expected, Eq eq) {
  Verification v;
  if (got.size() != expected.size()) {
    v.status = Verification::Status::failed;
    v.detail = "size mismatch: " + std::to_string(got.size()) + " vs " + std::to_string(expected.size());
    return v;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (!eq(got[i], expected[i])) {
      v.status = Verification::Status::failed;
      v.first_mismatch = i;
      v.detail = "mismatch at node " + std::to_string(i) + ": expected " + std::to_string(expected[i]) + ", got " +
                 std::to_string(got[i]);
      return v;
    }
  }
  v.status = Verification::Status::passed;
  return v;
}

Verification verify(const RunConfig& c, const Graph& g, NodeId source, const Output& out) {
  auto exact = [](auto a, auto b) { return a == b; };
  switch (c.algo) {
    case Algo::bfs:
      return compare(std::get<LabelResult>(out).labels, oracle::bfs(g, source), exact);
    case Algo::sssp:
      return compare(std::get<LabelResult>(out).labels, oracle::dijkstra(g, source), exact);
    case Algo::cc:
      return compare(std::get<LabelResult>(out).labels, oracle::cc_unionfind(g), exact);
    case Algo::pr: {
      const auto& r = std::get<RankResult>(out);
      // Same number of power iterations as the run performed.
      return compare(r.ranks, oracle::pagerank_power(g, c.damping, r.stats.rounds),
                     [](double a, double b) { return std::abs(a - b) <= kRankTolerance; });
    }
    case Algo::kcore:
      return compare(std::get<CoreResult>(out).in_core, oracle::kcore(g, c.k), exact);
    case Algo::bc:
      return compare(std::get<ScoreResult>(out).scores, oracle::bc(g, source), [](double a, double b) {
        return std::abs(a - b) <= kScoreTolerance * std::max(1.0, std::abs(b));
      });
    case Algo::tc: {
      Verification v;
      if (g.num_nodes() > oracle::kMaxTriangleOracleNodes) {
        v.detail = "triangle oracle limited to " + std::to_string(oracle::kMaxTriangleOracleNodes) + " nodes";
        return v;
      }
      const auto expected = oracle::triangles(g);
      const auto got = std::get<CountResult>(out).triangles;
      v.status = got == expected ? Verification::Status::passed : Verification::Status::failed;
      if (got != expected) v.detail = "expected " + std::to_string(expected) + " triangles, got " + std::to_string(got);
      return v;
    }
  }
  return {};
}

std::vector<std::pair<std::string, double>> summarize(const Output& out) {
  std::vector<std::pair<std::string, double>> s;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, LabelResult>) {
          std::uint64_t reached = 0;
          Label max_label = 0;
          for (Label l : r.labels)
            if (l != kUnreached) {
              ++reached;
              max_label = std::max(max_label, l);
            }
          s.emplace_back("labelled_nodes", static_cast<double>(reached));
          s.emplace_back("max_label", static_cast<double>(max_label));
        } else if constexpr (std::is_same_v<T, RankResult>) {
          s.emplace_back("rank_sum", std::accumulate(r.ranks.begin(), r.ranks.end(), 0.0));
          s.emplace_back("max_rank", r.ranks.empty() ? 0.0 : *std::max_element(r.ranks.begin(), r.ranks.end()));
        } else if constexpr (std::is_same_v<T, CoreResult>) {
          s.emplace_back("in_core", static_cast<double>(std::count(r.in_core.begin(), r.in_core.end(), 1)));
        } else if constexpr (std::is_same_v<T, ScoreResult>) {
          s.emplace_back("max_score", r.scores.empty() ? 0.0 : *std::max_element(r.scores.begin(), r.scores.end()));
        } else {
          s.emplace_back("triangles", static_cast<double>(r.triangles));
        }
      },
      out);
  return s;
}

std::uint64_t footprint_bytes(const Graph& g, Algo algo) {
  const auto n = g.num_nodes();
  const auto m = g.num_edges();
  std::uint64_t bytes = 8 * (n + 1) + 8 * m + (g.has_weights() ? 4 * m : 0);
  if (g.has_in_edges()) bytes *= 2;
  bytes += (algo == Algo::pr || algo == Algo::bc ? 16 : 8) * n;
  return std::max<std::uint64_t>(bytes, 1);
}

AllocationSummary plan_memory(const RunConfig& c, const Graph& g) {
  AllocationSummary a;
  const auto distribution = c.distribute_over_threads ? mem::Distribution::over_threads(c.threads)
                                                      : mem::Distribution::sockets();
  a.policy = mem::to_string(c.policy);
  a.distribute = c.distribute_over_threads ? "threads" : "sockets";
  a.page_size = c.page_size;
  a.footprint_bytes = footprint_bytes(g, c.algo);
  const auto plan = mem::page_plan(a.footprint_bytes, c.page_size);
  a.num_pages = plan.num_pages;
  a.tlb_reach = plan.tlb_reach;
  const auto map = mem::plan_allocation(a.footprint_bytes, c.policy, c.topology, distribution, c.page_size);
  const auto balance = mem::socket_balance(map);
  a.per_socket_bytes = balance.per_socket_bytes;
  a.balance_ratio = balance.ratio;
  // Workers are attributed to model sockets round-robin.
  for (unsigned w = 0; w < c.threads; ++w) a.worker_sockets.push_back(w % c.topology.num_sockets);
  return a;
}

}  // namespace

std::string_view to_string(Verification::Status status) {
  switch (status) {
    case Verification::Status::skipped: return "skipped";
    case Verification::Status::passed: return "passed";
    case Verification::Status::failed: return "failed";
  }
  return "?";
}

RunReport execute(const RunConfig& config) {
  if (config.trials == 0) throw Error(Errc::invalid_argument, "trials must be >= 1");
  RunReport report;
  report.config = config;
  report.variant = config.variant.empty() ? std::string(variants_for(config.algo).front()) : config.variant;
  RunConfig c = config;
  c.variant = report.variant;

  const Graph g = prepare_graph(c);
  report.graph.num_nodes = g.num_nodes();
  report.graph.num_edges = g.num_edges();
  report.graph.weighted = g.has_weights();
  report.graph.has_transpose = g.has_in_edges();
  report.graph.csr_hash = hash_csr(g);
  report.graph.meta = compute_meta(g);

  NodeId source = 0;
  if (c.algo == Algo::bfs || c.algo == Algo::sssp || c.algo == Algo::bc) {
    if (g.num_nodes() == 0) throw Error(Errc::invalid_argument, "graph has no nodes");
    source = c.source.value_or(report.graph.meta.max_out_degree_node);
    if (source >= g.num_nodes())
      throw Error(Errc::invalid_argument, "source " + std::to_string(source) + " is not a node");
    report.source = source;
  }
  std::uint64_t delta = 1;
  if (c.algo == Algo::sssp) {
    delta = c.delta.value_or(default_delta(g));
    report.delta = delta;
  }
  report.allocation = plan_memory(c, g);

  run_once(c, g, source, delta);  // warm-up, untimed
  std::optional<Output> last;
  for (unsigned t = 0; t < c.trials; ++t) {
    last = run_once(c, g, source, delta);
    report.trials.push_back(stats_of(*last));
  }
  double total = 0.0;
  for (const auto& s : report.trials) total += s.wall_ms;
  report.mean_wall_ms = total / static_cast<double>(report.trials.size());

  if (c.inject_fault) corrupt(*last);
  report.result = summarize(*last);
  if (c.verify) report.verification = verify(c, g, source, *last);
  return report;
}

}  // namespace grainstone::bench
