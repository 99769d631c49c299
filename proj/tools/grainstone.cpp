// grainstone command-line harness. Talks to the engine only through the C API.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grainstone/grainstone.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

int fail(gs_status status) {
  std::cerr << "grainstone: " << gs_status_name(status) << ": " << gs_last_error() << "\n";
  return status == GS_ERR_USAGE ? kExitUsage : kExitRuntime;
}

void print_top_usage() {
  std::cerr << "usage: grainstone <command> [options]\n"
               "commands:\n"
               "  run    execute a benchmark (see `grainstone run --help`)\n"
               "  gen    write a CSR-bin graph from an RMAT spec or an edge list\n"
               "  micro  run the memory-placement write microbenchmark\n";
}

int cmd_run(const std::vector<const char*>& args) {
  for (const char* a : args) {
    const std::string s = a;
    if (s == "--help" || s == "-h") {
      char* text = gs_run_usage();
      if (text) std::cout << text;
      gs_string_free(text);
      return kExitOk;
    }
  }
  gs_run_config* config = nullptr;
  if (auto s = gs_run_config_parse(static_cast<int>(args.size()), args.data(), &config); s != GS_OK) return fail(s);
#ifdef GRAINSTONE_FAULT_INJECTION
  gs_run_config_set_fault_injection(config, 1);
#endif
  gs_run_report* report = nullptr;
  auto s = gs_execute(config, &report);
  if (s != GS_OK) {
    gs_run_config_free(config);
    return fail(s);
  }
  s = gs_run_report_emit(report, gs_run_config_report_format(config), gs_run_config_out_path(config));
  const auto verdict = gs_run_report_verification(report);
  const std::string detail = gs_run_report_verification_detail(report);
  gs_run_report_free(report);
  gs_run_config_free(config);
  if (s != GS_OK) return fail(s);
  if (verdict == GS_VERIFY_FAILED) {
    std::cerr << "grainstone: verification failed: " << detail << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

// Accepts plain byte counts or k/m/g suffixes (powers of 1024).
std::uint64_t parse_size(const std::string& text) {
  std::size_t used = 0;
  const auto value = std::stoull(text, &used);
  const std::string suffix = text.substr(used);
  if (suffix.empty()) return value;
  switch (suffix.size() == 1 || suffix.size() == 2 ? suffix[0] : '?') {
    case 'k': case 'K': return value << 10;
    case 'm': case 'M': return value << 20;
    case 'g': case 'G': return value << 30;
    case 't': case 'T': return value << 40;
  }
  throw CLI::ValidationError("--total", "bad size suffix '" + suffix + "'");
}

int parse_subcommand(CLI::App& app, const std::vector<const char*>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "grainstone: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return -1;
}

int cmd_gen(const std::vector<const char*>& args) {
  CLI::App app{"write a CSR-bin graph", "gen"};
  std::string rmat, edge_list, out, weights;
  bool symmetrize = false, dedupe = false;
  auto* rmat_opt = app.add_option("--rmat", rmat, "SCALE:EF:SEED");
  auto* el_opt = app.add_option("--edge-list", edge_list, "whitespace-separated `src dst [weight]` lines");
  rmat_opt->excludes(el_opt);
  app.add_flag("--symmetrize", symmetrize, "add reverse edges (drops self-loops)");
  app.add_flag("--dedupe", dedupe, "merge duplicate edges of an edge list");
  app.add_option("--weights", weights, "SEED:MAX random edge weights");
  app.add_option("--out", out, "output path")->required();
  if (int rc = parse_subcommand(app, args); rc >= 0) return rc;
  if (rmat.empty() == edge_list.empty()) {
    std::cerr << "grainstone: usage error: give exactly one of --rmat or --edge-list\n";
    return kExitUsage;
  }

  gs_graph* g = nullptr;
  gs_status s = GS_OK;
  if (!rmat.empty()) {
    unsigned scale = 0;
    unsigned long long ef = 0, seed = 0;
    char tail = 0;
    if (std::sscanf(rmat.c_str(), "%u:%llu:%llu%c", &scale, &ef, &seed, &tail) != 3) {
      std::cerr << "grainstone: usage error: --rmat must be SCALE:EF:SEED\n";
      return kExitUsage;
    }
    s = gs_graph_generate_rmat(scale, ef, 0.57, 0.19, 0.19, 0.05, seed, &g);
  } else {
    s = gs_graph_from_edge_list(edge_list.c_str(), 0, dedupe ? 1 : 0, &g);
  }
  if (s != GS_OK) return fail(s);

  auto replace = [&](gs_status step, gs_graph*& next) {
    if (step != GS_OK) return step;
    gs_graph_free(g);
    g = next;
    return GS_OK;
  };
  gs_graph* next = nullptr;
  if (symmetrize && s == GS_OK) s = replace(gs_graph_symmetrize(g, &next), next);
  if (!weights.empty() && s == GS_OK) {
    unsigned long long seed = 0;
    unsigned max = 0;
    char tail = 0;
    if (std::sscanf(weights.c_str(), "%llu:%u%c", &seed, &max, &tail) != 2) {
      gs_graph_free(g);
      std::cerr << "grainstone: usage error: --weights must be SEED:MAX\n";
      return kExitUsage;
    }
    s = replace(gs_graph_assign_weights(g, seed, max, &next), next);
  }
  if (s == GS_OK) s = gs_graph_write(g, out.c_str());
  if (s == GS_OK) {
    std::cout << "wrote " << out << ": " << gs_graph_num_nodes(g) << " nodes, " << gs_graph_num_edges(g)
              << " edges\n";
  }
  gs_graph_free(g);
  return s == GS_OK ? kExitOk : fail(s);
}

int cmd_micro(const std::vector<const char*>& args) {
  CLI::App app{"memory-placement write microbenchmark", "micro"};
  std::string total = "64m", policy = "interleaved", distribute = "sockets", page_size = "4k";
  unsigned threads = 1, sockets = 2, threads_per_socket = 24;
  std::string capacity = "192g";
  app.add_option("--total", total, "bytes to allocate (k/m/g/t suffixes)");
  app.add_option("--threads", threads, "writer threads");
  app.add_option("--policy", policy, "local:S|interleaved|blocked");
  app.add_option("--distribute", distribute, "sockets|threads");
  app.add_option("--page-size", page_size, "4k|2m");
  app.add_option("--sockets", sockets, "model sockets");
  app.add_option("--socket-capacity", capacity, "bytes per model socket");
  app.add_option("--threads-per-socket", threads_per_socket, "model threads per socket");
  if (int rc = parse_subcommand(app, args); rc >= 0) return rc;

  gs_policy p{GS_POLICY_INTERLEAVED, 0};
  if (policy == "blocked") {
    p.kind = GS_POLICY_BLOCKED;
  } else if (policy.rfind("local:", 0) == 0 && policy.size() > 6 &&
             policy.find_first_not_of("0123456789", 6) == std::string::npos) {
    p.kind = GS_POLICY_LOCAL;
    p.local_socket = static_cast<std::uint32_t>(std::stoul(policy.substr(6)));
  } else if (policy != "interleaved") {
    std::cerr << "grainstone: usage error: --policy must be local:S, interleaved or blocked\n";
    return kExitUsage;
  }
  if (distribute != "sockets" && distribute != "threads") {
    std::cerr << "grainstone: usage error: --distribute must be sockets or threads\n";
    return kExitUsage;
  }
  std::uint64_t page = 0;
  if (page_size == "4k") page = 4096;
  else if (page_size == "2m") page = 2u << 20;
  else {
    std::cerr << "grainstone: usage error: --page-size must be 4k or 2m\n";
    return kExitUsage;
  }
  std::uint64_t total_bytes = 0, capacity_bytes = 0;
  try {
    total_bytes = parse_size(total);
    capacity_bytes = parse_size(capacity);
  } catch (const std::exception& e) {
    std::cerr << "grainstone: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  const gs_topology topo{sockets, capacity_bytes, threads_per_socket};
  char* json = nullptr;
  const auto s =
      gs_write_microbenchmark(total_bytes, threads, p, &topo, distribute == "threads" ? threads : 0, page, &json);
  if (s != GS_OK) return fail(s);
  std::cout << json << "\n";
  gs_string_free(json);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_top_usage();
    return kExitUsage;
  }
  const std::string command = argv[1];
  const std::vector<const char*> rest(argv + 2, argv + argc);
  try {
    if (command == "run") return cmd_run(rest);
    if (command == "gen") return cmd_gen(rest);
    if (command == "micro") return cmd_micro(rest);
  } catch (const std::exception& e) {
    std::cerr << "grainstone: " << e.what() << "\n";
    return kExitRuntime;
  }
  if (command == "--help" || command == "-h" || command == "help") {
    print_top_usage();
    return kExitOk;
  }
  std::cerr << "grainstone: unknown command '" << command << "'\n";
  print_top_usage();
  return kExitUsage;
}
