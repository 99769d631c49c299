#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "CLI11.hpp"
#include "grainstone/bench.hpp"
#include "grainstone/error.hpp"

namespace grainstone::bench {

namespace {

constexpr Algo kAllAlgos[] = {Algo::bfs, Algo::sssp, Algo::cc, Algo::pr, Algo::kcore, Algo::bc, Algo::tc};

[[noreturn]] void usage_error(const std::string& what) { throw Error(Errc::usage, what); }

template <class T>
T parse_unsigned(std::string_view text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    usage_error(std::string("invalid ") + what + " '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto at = text.find(sep);
    parts.push_back(text.substr(0, at));
    if (at == std::string_view::npos) break;
    text.remove_prefix(at + 1);
  }
  return parts;
}

void configure(CLI::App& app, RunConfig& c, std::string& algo, std::string& graph, std::string& weights,
               std::string& policy, std::string& distribute, std::string& page_size, std::string& source,
               std::string& report, std::string& out, std::uint64_t& delta) {
  app.add_option("--algo", algo, "bfs|sssp|cc|pr|kcore|bc|tc")->required();
  app.add_option("--variant", c.variant, "algorithm variant");
  app.add_option("--graph", graph, "file:PATH | rmat:SCALE:EF:SEED");
  app.add_option("--weights", weights, "SEED:MAX random edge weights");
  app.add_option("--threads", c.threads, "worker threads (default: $GRAINSTONE_THREADS or 1)");
  app.add_option("--policy", policy, "local:S|interleaved|blocked");
  app.add_option("--distribute", distribute, "sockets|threads");
  app.add_option("--page-size", page_size, "4k|2m");
  app.add_option("--delta", delta, "delta-stepping bucket width");
  app.add_option("--tolerance", c.tolerance, "pagerank L1 tolerance");
  app.add_option("--max-rounds", c.max_rounds, "pagerank round limit");
  app.add_option("--k", c.k, "kcore threshold");
  app.add_option("--damping", c.damping, "pagerank damping factor");
  app.add_option("--source", source, "max-out-degree|ID");
  app.add_option("--trials", c.trials, "timed trials");
  app.add_flag("--verify", c.verify, "compare against the sequential oracle");
  app.add_flag("--no-transpose", c.no_transpose, "never build in-edges");
  app.add_option("--report", report, "json|csv");
  app.add_option("--out", out, "report path (default: stdout)");
}

}  // namespace

std::string_view to_string(Algo algo) {
  switch (algo) {
    case Algo::bfs: return "bfs";
    case Algo::sssp: return "sssp";
    case Algo::cc: return "cc";
    case Algo::pr: return "pr";
    case Algo::kcore: return "kcore";
    case Algo::bc: return "bc";
    case Algo::tc: return "tc";
  }
  return "?";
}

Algo parse_algo(std::string_view text) {
  for (Algo a : kAllAlgos)
    if (to_string(a) == text) return a;
  usage_error("unknown algorithm '" + std::string(text) + "'");
}

std::vector<std::string_view> variants_for(Algo algo) {
  switch (algo) {
    case Algo::bfs: return {"push_bsp_sparse", "direction_opt"};
    case Algo::sssp: return {"delta_async", "data_driven_bsp", "bellman_ford_topo"};
    case Algo::cc: return {"label_prop_sc", "label_prop_bsp"};
    case Algo::pr: return {"topo_pull"};
    case Algo::kcore: return {"data_driven"};
    case Algo::bc: return {"brandes"};
    case Algo::tc: return {"degree_ordered"};
  }
  return {};
}

std::string GraphSource::describe() const {
  if (kind == Kind::file) return "file:" + path.string();
  return "rmat:" + std::to_string(scale) + ":" + std::to_string(edge_factor) + ":" + std::to_string(seed);
}

GraphSource parse_graph_source(std::string_view text) {
  GraphSource source;
  if (text.starts_with("file:")) {
    source.kind = GraphSource::Kind::file;
    source.path = std::string(text.substr(5));
    if (source.path.empty()) usage_error("empty graph path");
    return source;
  }
  const auto parts = split(text, ':');
  if (parts.size() != 4 || parts[0] != "rmat") usage_error("graph must be file:PATH or rmat:SCALE:EF:SEED");
  source.kind = GraphSource::Kind::rmat;
  source.scale = parse_unsigned<std::uint32_t>(parts[1], "rmat scale");
  source.edge_factor = parse_unsigned<std::uint64_t>(parts[2], "rmat edge factor");
  source.seed = parse_unsigned<std::uint64_t>(parts[3], "rmat seed");
  if (source.scale > 32) usage_error("rmat scale must be <= 32");
  return source;
}

RunConfig parse_config(std::span<const std::string> args) {
  RunConfig c;
  if (const char* env = std::getenv("GRAINSTONE_THREADS"); env && *env)
    c.threads = parse_unsigned<unsigned>(env, "GRAINSTONE_THREADS");

  CLI::App app{"grainstone run", "run"};
  std::string algo, graph, weights, policy, distribute, page_size, source, report, out;
  std::uint64_t delta = 0;
  configure(app, c, algo, graph, weights, policy, distribute, page_size, source, report, out, delta);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    usage_error(app.help());
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
  }

  c.algo = parse_algo(algo);
  const auto variants = variants_for(c.algo);
  if (c.variant.empty()) c.variant = std::string(variants.front());
  if (std::find(variants.begin(), variants.end(), c.variant) == variants.end())
    usage_error("variant '" + c.variant + "' is not valid for " + std::string(to_string(c.algo)));

  if (!graph.empty()) c.graph = parse_graph_source(graph);
  if (!weights.empty()) {
    const auto parts = split(weights, ':');
    if (parts.size() != 2) usage_error("--weights must be SEED:MAX");
    c.weights = WeightSpec{parse_unsigned<std::uint64_t>(parts[0], "weight seed"),
                           parse_unsigned<std::uint32_t>(parts[1], "max weight")};
    if (c.weights->max_weight < 1) usage_error("max weight must be >= 1");
  }
  try {
    if (!policy.empty()) c.policy = mem::parse_policy(policy);
    if (!page_size.empty()) c.page_size = mem::parse_page_size(page_size);
  } catch (const Error& e) {
    usage_error(e.what());
  }
  if (!distribute.empty()) {
    if (distribute != "sockets" && distribute != "threads") usage_error("--distribute must be sockets or threads");
    c.distribute_over_threads = distribute == "threads";
  }
  if (app.count("--delta")) {
    if (delta == 0) usage_error("--delta must be >= 1");
    c.delta = delta;
  }
  if (!source.empty() && source != "max-out-degree") c.source = parse_unsigned<NodeId>(source, "source");
  if (!report.empty()) {
    if (report == "json") c.report = ReportFormat::json;
    else if (report == "csv") c.report = ReportFormat::csv;
    else usage_error("--report must be json or csv");
  }
  if (!out.empty()) c.out = out;

  if (c.threads == 0) usage_error("--threads must be >= 1");
  if (c.trials == 0) usage_error("--trials must be >= 1");
  if (c.tolerance < 0) usage_error("--tolerance must be non-negative");
  if (c.damping < 0 || c.damping > 1) usage_error("--damping must be in [0,1]");
  if (c.no_transpose) {
    const bool needs_in_edges =
        (c.algo == Algo::bfs && c.variant == "direction_opt") || c.algo == Algo::pr || c.algo == Algo::cc;
    if (needs_in_edges)
      usage_error(std::string(to_string(c.algo)) + " " + c.variant + " needs in-edges; drop --no-transpose");
  }
  return c;
}

std::string run_usage() {
  CLI::App app{"grainstone run", "run"};
  RunConfig c;
  std::string s[9];
  std::uint64_t delta = 0;
  configure(app, c, s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7], s[8], delta);
  return app.help();
}

}  // namespace grainstone::bench
