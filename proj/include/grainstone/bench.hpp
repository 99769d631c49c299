#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grainstone/algorithms.hpp"
#include "grainstone/graph.hpp"
#include "grainstone/mem_policy.hpp"

namespace grainstone::bench {

enum class Algo { bfs, sssp, cc, pr, kcore, bc, tc };

std::string_view to_string(Algo algo);
Algo parse_algo(std::string_view text);
// Variant names accepted for `algo`; the first one is the default.
std::vector<std::string_view> variants_for(Algo algo);

struct GraphSource {
  enum class Kind { file, rmat };
  Kind kind = Kind::rmat;
  std::filesystem::path path;
  std::uint32_t scale = 14;
  std::uint64_t edge_factor = 16;
  std::uint64_t seed = 42;

  std::string describe() const;
};

// "file:PATH" | "rmat:SCALE:EF:SEED"
GraphSource parse_graph_source(std::string_view text);

struct WeightSpec {
  std::uint64_t seed = 1;
  std::uint32_t max_weight = kDefaultMaxWeight;
};

enum class ReportFormat { json, csv };

struct RunConfig {
  Algo algo = Algo::bfs;
  std::string variant;
  GraphSource graph;
  std::optional<WeightSpec> weights;
  unsigned threads = 1;
  mem::Policy policy = mem::Policy::interleaved();
  bool distribute_over_threads = false;
  std::uint64_t page_size = mem::kSmallPage;
  mem::Topology topology;
  std::optional<std::uint64_t> delta;
  double tolerance = 1e-6;
  std::uint64_t max_rounds = 100;
  std::uint64_t k = kDefaultCoreK;
  double damping = 0.85;
  std::optional<NodeId> source;  // nullopt = maximum out-degree node
  unsigned trials = 3;
  bool verify = false;
  bool no_transpose = false;
  ReportFormat report = ReportFormat::json;
  std::optional<std::filesystem::path> out;
  // Test hook: corrupts one output label after the last trial.
  bool inject_fault = false;
};

// Parses the arguments that follow `run`. Throws Error(Errc::usage) on unknown
// flags, bad values or invalid combinations.
RunConfig parse_config(std::span<const std::string> args);
std::string run_usage();

struct Verification {
  enum class Status { skipped, passed, failed };
  Status status = Status::skipped;
  std::string detail;
  std::optional<NodeId> first_mismatch;
};

std::string_view to_string(Verification::Status status);

struct GraphSummary {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  bool weighted = false;
  bool has_transpose = false;
  std::uint64_t csr_hash = 0;
  GraphMeta meta;
};

struct AllocationSummary {
  std::string policy;
  std::string distribute;
  std::uint64_t page_size = 0;
  std::uint64_t footprint_bytes = 0;
  std::uint64_t num_pages = 0;
  std::uint64_t tlb_reach = 0;
  std::vector<std::uint64_t> per_socket_bytes;
  double balance_ratio = 1.0;
  std::vector<std::uint32_t> worker_sockets;
};

struct RunReport {
  RunConfig config;
  std::string variant;  // resolved
  GraphSummary graph;
  std::optional<NodeId> source;
  std::optional<std::uint64_t> delta;  // resolved, sssp only
  std::vector<RunStats> trials;
  double mean_wall_ms = 0.0;
  Verification verification;
  AllocationSummary allocation;
  std::vector<std::pair<std::string, double>> result;

  bool failed() const { return verification.status == Verification::Status::failed; }
};

// Builds the graph, runs one untimed warm-up and `trials` timed runs, then
// verifies against the sequential oracle when requested.
RunReport execute(const RunConfig& config);

inline constexpr std::string_view kCsvHeader =
    "algo,variant,trial,rounds,operator_applications,edges_relaxed,wall_ms,mean_wall_ms,verification";

std::string render_report(const RunReport& report, ReportFormat format);
// Writes to `path`, or to `out` when no path is given.
void emit_report(const RunReport& report, ReportFormat format, const std::optional<std::filesystem::path>& path,
                 std::ostream& out);

}  // namespace grainstone::bench
