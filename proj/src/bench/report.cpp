#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "grainstone/bench.hpp"
#include "grainstone/error.hpp"
#include "json.hpp"

namespace grainstone::bench {

namespace {

using nlohmann::ordered_json;

std::string hex64(std::uint64_t value) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << value;
  return s.str();
}

// Shortest text that parses back to the same double.
std::string shortest(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

template <class T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

ordered_json config_json(const RunConfig& c, const std::string& variant) {
  ordered_json j;
  j["algo"] = to_string(c.algo);
  j["variant"] = variant;
  j["graph"] = c.graph.describe();
  j["weights"] = c.weights ? ordered_json(std::to_string(c.weights->seed) + ":" + std::to_string(c.weights->max_weight))
                           : ordered_json(nullptr);
  j["threads"] = c.threads;
  j["policy"] = mem::to_string(c.policy);
  j["distribute"] = c.distribute_over_threads ? "threads" : "sockets";
  j["page_size"] = mem::page_size_name(c.page_size);
  j["delta"] = optional_json(c.delta);
  j["tolerance"] = c.tolerance;
  j["max_rounds"] = c.max_rounds;
  j["k"] = c.k;
  j["damping"] = c.damping;
  j["source"] = c.source ? ordered_json(*c.source) : ordered_json("max-out-degree");
  j["trials"] = c.trials;
  j["verify"] = c.verify;
  return j;
}

ordered_json stats_json(const RunStats& s) {
  ordered_json j;
  j["rounds"] = s.rounds;
  j["operator_applications"] = s.operator_applications;
  j["edges_relaxed"] = s.edges_relaxed;
  j["frontier_sizes"] = s.frontier_sizes;
  j["wall_ms"] = s.wall_ms;
  return j;
}

std::string to_json(const RunReport& r) {
  ordered_json j;
  j["schema"] = "grainstone.run_report/1";
  j["config"] = config_json(r.config, r.variant);

  auto& g = j["graph"];
  g["num_nodes"] = r.graph.num_nodes;
  g["num_edges"] = r.graph.num_edges;
  g["weighted"] = r.graph.weighted;
  g["has_transpose"] = r.graph.has_transpose;
  g["csr_hash"] = hex64(r.graph.csr_hash);
  g["max_out_degree_node"] = r.graph.meta.max_out_degree_node;
  g["max_out_degree"] = r.graph.meta.max_out_degree;
  g["max_in_degree"] = r.graph.meta.max_in_degree;
  g["estimated_diameter"] = r.graph.meta.estimated_diameter;

  j["source"] = optional_json(r.source);
  j["delta"] = optional_json(r.delta);
  j["trials"] = ordered_json::array();
  for (const auto& s : r.trials) j["trials"].push_back(stats_json(s));
  j["mean_wall_ms"] = r.mean_wall_ms;

  auto& v = j["verification"];
  v["status"] = to_string(r.verification.status);
  v["detail"] = r.verification.detail;
  v["first_mismatch"] = optional_json(r.verification.first_mismatch);

  auto& a = j["allocation"];
  a["policy"] = r.allocation.policy;
  a["distribute"] = r.allocation.distribute;
  a["page_size"] = r.allocation.page_size;
  a["footprint_bytes"] = r.allocation.footprint_bytes;
  a["num_pages"] = r.allocation.num_pages;
  a["tlb_reach"] = r.allocation.tlb_reach;
  a["per_socket_bytes"] = r.allocation.per_socket_bytes;
  // JSON has no infinity; null means one socket holds nothing.
  a["balance_ratio"] = std::isinf(r.allocation.balance_ratio) ? ordered_json(nullptr)
                                                               : ordered_json(r.allocation.balance_ratio);
  a["worker_sockets"] = r.allocation.worker_sockets;
  a["numa_migration"] = "off recommended";

  auto& res = j["result"];
  res = ordered_json::object();
  for (const auto& [key, value] : r.result) res[key] = value;
  return j.dump(2) + "\n";
}

std::string to_csv(const RunReport& r) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (std::size_t t = 0; t < r.trials.size(); ++t) {
    const auto& s = r.trials[t];
    out << to_string(r.config.algo) << ',' << r.variant << ',' << t << ',' << s.rounds << ','
        << s.operator_applications << ',' << s.edges_relaxed << ',' << shortest(s.wall_ms) << ',' << shortest(r.mean_wall_ms) << ','
        << to_string(r.verification.status) << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_report(const RunReport& report, ReportFormat format) {
  return format == ReportFormat::json ? to_json(report) : to_csv(report);
}

void emit_report(const RunReport& report, ReportFormat format, const std::optional<std::filesystem::path>& path,
                 std::ostream& out) {
  const auto text = render_report(report, format);
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::trunc);
  if (!file) throw Error(Errc::io, "cannot open " + path->string() + " for writing");
  file << text;
  if (!file) throw Error(Errc::io, "write failed: " + path->string());
}

}  // namespace grainstone::bench
