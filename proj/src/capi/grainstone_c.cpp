#include "grainstone/grainstone.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "grainstone/algorithms.hpp"
#include "grainstone/bench.hpp"
#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"
#include "grainstone/mem_policy.hpp"

using namespace grainstone;

struct gs_graph {
  Graph graph;
};

struct gs_allocation_map {
  mem::AllocationMap map;
};

struct gs_run_config {
  bench::RunConfig config;
  std::string out_path;
};

struct gs_run_report {
  bench::RunReport report;
};

namespace {

thread_local std::string last_error;

gs_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return GS_ERR_INVALID_ARGUMENT;
    case Errc::io: return GS_ERR_IO;
    case Errc::format: return GS_ERR_FORMAT;
    case Errc::precondition: return GS_ERR_PRECONDITION;
    case Errc::usage: return GS_ERR_USAGE;
    case Errc::verification: return GS_ERR_VERIFICATION;
    case Errc::allocation: return GS_ERR_ALLOCATION;
  }
  return GS_ERR_INTERNAL;
}

template <class F>
gs_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GS_ERR_ALLOCATION;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(Errc::invalid_argument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gs_status make_graph(gs_graph** out, auto&& build) {
  return guarded([&] {
    require(out, "out");
    *out = new gs_graph{build()};
  });
}

void fill_stats(const RunStats& s, gs_run_stats* out) {
  if (!out) return;
  out->rounds = s.rounds;
  out->operator_applications = s.operator_applications;
  out->edges_relaxed = s.edges_relaxed;
  out->wall_ms = s.wall_ms;
}

template <class T>
void copy_out(const std::vector<T>& values, T* out) {
  require(out, "output buffer");
  std::copy(values.begin(), values.end(), out);
}

mem::Policy to_policy(gs_policy p) {
  switch (p.kind) {
    case GS_POLICY_LOCAL: return mem::Policy::local(p.local_socket);
    case GS_POLICY_INTERLEAVED: return mem::Policy::interleaved();
    case GS_POLICY_BLOCKED: return mem::Policy::blocked();
  }
  throw Error(Errc::invalid_argument, "unknown policy kind");
}

mem::Topology to_topology(const gs_topology* t) {
  require(t, "topology");
  mem::Topology topo;
  topo.num_sockets = t->num_sockets;
  topo.socket_capacity = t->socket_capacity;
  topo.threads_per_socket = t->threads_per_socket;
  return topo;
}

mem::Distribution to_distribution(std::uint32_t threads) {
  return threads == 0 ? mem::Distribution::sockets() : mem::Distribution::over_threads(threads);
}

bench::ReportFormat to_format(gs_report_format f) {
  return f == GS_REPORT_CSV ? bench::ReportFormat::csv : bench::ReportFormat::json;
}

}  // namespace

extern "C" {

const char* gs_last_error(void) { return last_error.c_str(); }

const char* gs_status_name(gs_status status) {
  switch (status) {
    case GS_OK: return "ok";
    case GS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GS_ERR_IO: return "i/o error";
    case GS_ERR_FORMAT: return "format error";
    case GS_ERR_PRECONDITION: return "precondition violated";
    case GS_ERR_USAGE: return "usage error";
    case GS_ERR_VERIFICATION: return "verification failed";
    case GS_ERR_ALLOCATION: return "allocation failed";
    case GS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gs_string_free(char* text) { std::free(text); }

gs_status gs_graph_load(const char* path, gs_graph** out) {
  return make_graph(out, [&] {
    require(path, "path");
    return load_csr_bin(path);
  });
}

gs_status gs_graph_write(const gs_graph* graph, const char* path) {
  return guarded([&] {
    require(graph, "graph");
    require(path, "path");
    write_csr_bin(graph->graph, path);
  });
}

gs_status gs_graph_from_edge_list(const char* path, int symmetrize, int dedupe, gs_graph** out) {
  return make_graph(out, [&] {
    require(path, "path");
    return ingest_edge_list(path, symmetrize != 0, dedupe != 0);
  });
}

gs_status gs_graph_from_csr(uint64_t num_nodes, const uint64_t* offsets, uint64_t num_edges, const uint64_t* dests,
                            const uint32_t* weights, gs_graph** out) {
  return make_graph(out, [&] {
    require(offsets, "offsets");
    if (num_edges > 0) require(dests, "dests");
    std::vector<EdgeIndex> o(offsets, offsets + num_nodes + 1);
    std::vector<NodeId> d(dests, dests + num_edges);
    std::optional<std::vector<Weight>> w;
    if (weights) w.emplace(weights, weights + num_edges);
    return Graph::from_csr(std::move(o), std::move(d), std::move(w));
  });
}

gs_status gs_graph_generate_rmat(uint32_t scale, uint64_t edge_factor, double a, double b, double c, double d,
                                 uint64_t seed, gs_graph** out) {
  return make_graph(out, [&] {
    RmatParams p;
    p.scale = scale;
    p.edge_factor = edge_factor;
    p.a = a;
    p.b = b;
    p.c = c;
    p.d = d;
    p.seed = seed;
    return generate_rmat(p);
  });
}

gs_status gs_graph_assign_weights(const gs_graph* graph, uint64_t seed, uint32_t max_weight, gs_graph** out) {
  return make_graph(out, [&] {
    require(graph, "graph");
    return assign_random_weights(graph->graph, seed, max_weight);
  });
}

gs_status gs_graph_build_transpose(const gs_graph* graph, gs_graph** out) {
  return make_graph(out, [&] {
    require(graph, "graph");
    return build_transpose(graph->graph);
  });
}

gs_status gs_graph_symmetrize(const gs_graph* graph, gs_graph** out) {
  return make_graph(out, [&] {
    require(graph, "graph");
    return symmetrize(graph->graph);
  });
}

gs_status gs_graph_meta_compute(const gs_graph* graph, gs_graph_meta* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    const auto m = compute_meta(graph->graph);
    out->max_out_degree_node = m.max_out_degree_node;
    out->max_out_degree = m.max_out_degree;
    out->max_in_degree = m.max_in_degree;
    out->estimated_diameter = m.estimated_diameter;
  });
}

uint64_t gs_graph_num_nodes(const gs_graph* graph) { return graph ? graph->graph.num_nodes() : 0; }
uint64_t gs_graph_num_edges(const gs_graph* graph) { return graph ? graph->graph.num_edges() : 0; }
int gs_graph_has_weights(const gs_graph* graph) { return graph && graph->graph.has_weights() ? 1 : 0; }
int gs_graph_has_transpose(const gs_graph* graph) { return graph && graph->graph.has_in_edges() ? 1 : 0; }

gs_status gs_graph_out_neighbors(const gs_graph* graph, uint64_t node, uint64_t* dests, size_t capacity,
                                 uint64_t* degree) {
  return guarded([&] {
    require(graph, "graph");
    if (node >= graph->graph.num_nodes()) throw Error(Errc::invalid_argument, "node out of range");
    const auto nbrs = graph->graph.out_neighbors(node);
    if (degree) *degree = nbrs.size();
    if (capacity > 0) require(dests, "dests");
    const auto count = std::min<std::size_t>(capacity, nbrs.size());
    std::copy(nbrs.begin(), nbrs.begin() + static_cast<std::ptrdiff_t>(count), dests);
  });
}

uint64_t gs_graph_hash(const gs_graph* graph) { return graph ? hash_csr(graph->graph) : 0; }

void gs_graph_free(gs_graph* graph) { delete graph; }

gs_status gs_bfs(const gs_graph* graph, uint64_t source, gs_bfs_variant variant, uint32_t threads,
                 uint64_t* distances, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    const auto r = bfs(graph->graph, source,
                       variant == GS_BFS_DIRECTION_OPT ? BfsVariant::direction_opt : BfsVariant::push_bsp_sparse,
                       threads);
    copy_out(r.labels, distances);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_sssp(const gs_graph* graph, uint64_t source, gs_sssp_variant variant, uint64_t delta, uint32_t threads,
                  uint64_t* distances, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    auto v = SsspVariant::delta_async;
    if (variant == GS_SSSP_DATA_DRIVEN_BSP) v = SsspVariant::data_driven_bsp;
    if (variant == GS_SSSP_BELLMAN_FORD_TOPO) v = SsspVariant::bellman_ford_topo;
    const auto r = sssp(graph->graph, source, v, delta == 0 ? default_delta(graph->graph) : delta, threads);
    copy_out(r.labels, distances);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_cc(const gs_graph* graph, gs_cc_variant variant, uint32_t threads, uint64_t* labels,
                gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    const auto r = connected_components(
        graph->graph, variant == GS_CC_LABEL_PROP_BSP ? CcVariant::label_prop_bsp : CcVariant::label_prop_sc, threads);
    copy_out(r.labels, labels);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_pagerank(const gs_graph* graph, double tolerance, uint64_t max_rounds, double damping, uint32_t threads,
                      double* ranks, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    const auto r = pagerank(graph->graph, {tolerance, max_rounds, damping}, threads);
    copy_out(r.ranks, ranks);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_kcore(const gs_graph* graph, uint64_t k, uint32_t threads, uint8_t* in_core, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    const auto r = kcore(graph->graph, k, threads);
    copy_out(r.in_core, in_core);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_bc(const gs_graph* graph, uint64_t source, uint32_t threads, double* scores, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    const auto r = betweenness(graph->graph, source, threads);
    copy_out(r.scores, scores);
    fill_stats(r.stats, stats);
  });
}

gs_status gs_tc(const gs_graph* graph, uint32_t threads, uint64_t* triangles, gs_run_stats* stats) {
  return guarded([&] {
    require(graph, "graph");
    require(triangles, "triangles");
    const auto r = triangle_count(graph->graph, threads);
    *triangles = r.triangles;
    fill_stats(r.stats, stats);
  });
}

gs_status gs_plan_allocation(uint64_t total_bytes, gs_policy policy, const gs_topology* topology,
                             uint32_t distribute_threads, uint64_t block_size, gs_allocation_map** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gs_allocation_map{mem::plan_allocation(total_bytes, to_policy(policy), to_topology(topology),
                                                      to_distribution(distribute_threads), block_size)};
  });
}

uint64_t gs_allocation_map_num_blocks(const gs_allocation_map* map) { return map ? map->map.assignments.size() : 0; }

gs_status gs_allocation_map_assignments(const gs_allocation_map* map, uint32_t* sockets, size_t capacity) {
  return guarded([&] {
    require(map, "map");
    if (capacity < map->map.assignments.size()) throw Error(Errc::invalid_argument, "buffer too small");
    copy_out(map->map.assignments, sockets);
  });
}

gs_status gs_socket_balance(const gs_allocation_map* map, uint64_t* per_socket, size_t capacity, double* ratio) {
  return guarded([&] {
    require(map, "map");
    const auto b = mem::socket_balance(map->map);
    if (per_socket) {
      if (capacity < b.per_socket_bytes.size()) throw Error(Errc::invalid_argument, "buffer too small");
      std::copy(b.per_socket_bytes.begin(), b.per_socket_bytes.end(), per_socket);
    }
    if (ratio) *ratio = b.ratio;
  });
}

void gs_allocation_map_free(gs_allocation_map* map) { delete map; }

gs_status gs_page_plan_compute(uint64_t total_bytes, uint64_t page_size, gs_page_plan* out) {
  return guarded([&] {
    require(out, "out");
    const auto p = mem::page_plan(total_bytes, page_size);
    *out = {p.page_size, p.num_pages, p.tlb_entries, p.tlb_reach};
  });
}

gs_status gs_write_microbenchmark(uint64_t total_bytes, uint32_t threads, gs_policy policy,
                                  const gs_topology* topology, uint32_t distribute_threads, uint64_t page_size,
                                  char** json_out) {
  return guarded([&] {
    require(json_out, "json_out");
    const auto report = mem::write_microbenchmark(total_bytes, threads, to_policy(policy), to_topology(topology),
                                                  page_size, to_distribution(distribute_threads));
    *json_out = dup_string(report.to_json());
  });
}

gs_status gs_run_config_parse(int argc, const char* const* argv, gs_run_config** out) {
  return guarded([&] {
    require(out, "out");
    if (argc > 0) require(argv, "argv");
    const std::vector<std::string> args(argv, argv + argc);
    auto* c = new gs_run_config{bench::parse_config(args), {}};
    if (c->config.out) c->out_path = c->config.out->string();
    *out = c;
  });
}

char* gs_run_usage(void) {
  try {
    return dup_string(bench::run_usage());
  } catch (...) {
    return nullptr;
  }
}

void gs_run_config_set_fault_injection(gs_run_config* config, int enabled) {
  if (config) config->config.inject_fault = enabled != 0;
}

gs_report_format gs_run_config_report_format(const gs_run_config* config) {
  return config && config->config.report == bench::ReportFormat::csv ? GS_REPORT_CSV : GS_REPORT_JSON;
}

const char* gs_run_config_out_path(const gs_run_config* config) {
  return config && !config->out_path.empty() ? config->out_path.c_str() : nullptr;
}

void gs_run_config_free(gs_run_config* config) { delete config; }

gs_status gs_execute(const gs_run_config* config, gs_run_report** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = new gs_run_report{bench::execute(config->config)};
  });
}

gs_verification gs_run_report_verification(const gs_run_report* report) {
  if (!report) return GS_VERIFY_SKIPPED;
  switch (report->report.verification.status) {
    case bench::Verification::Status::passed: return GS_VERIFY_PASSED;
    case bench::Verification::Status::failed: return GS_VERIFY_FAILED;
    case bench::Verification::Status::skipped: break;
  }
  return GS_VERIFY_SKIPPED;
}

const char* gs_run_report_verification_detail(const gs_run_report* report) {
  return report ? report->report.verification.detail.c_str() : "";
}

size_t gs_run_report_num_trials(const gs_run_report* report) { return report ? report->report.trials.size() : 0; }

gs_status gs_run_report_trial(const gs_run_report* report, size_t index, gs_run_stats* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (index >= report->report.trials.size()) throw Error(Errc::invalid_argument, "trial index out of range");
    fill_stats(report->report.trials[index], out);
  });
}

double gs_run_report_mean_wall_ms(const gs_run_report* report) { return report ? report->report.mean_wall_ms : 0.0; }

gs_status gs_run_report_render(const gs_run_report* report, gs_report_format format, char** text_out) {
  return guarded([&] {
    require(report, "report");
    require(text_out, "text_out");
    *text_out = dup_string(bench::render_report(report->report, to_format(format)));
  });
}

gs_status gs_run_report_emit(const gs_run_report* report, gs_report_format format, const char* path) {
  return guarded([&] {
    require(report, "report");
    std::optional<std::filesystem::path> p;
    if (path) p = path;
    bench::emit_report(report->report, to_format(format), p, std::cout);
    std::cout.flush();
  });
}

void gs_run_report_free(gs_run_report* report) { delete report; }

}  // extern "C"
