/* C interface to the grainstone graph analytics engine.
 *
 * Every function returns a gs_status. On failure, gs_last_error() returns a
 * message describing the most recent error on the calling thread. Objects are
 * opaque handles released with the matching *_free function. Output arrays
 * are caller-allocated and must hold num_nodes entries unless noted.
 */
#ifndef GRAINSTONE_H
#define GRAINSTONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GS_API __declspec(dllexport)
#else
#define GS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
  GS_OK = 0,
  GS_ERR_INVALID_ARGUMENT = 1,
  GS_ERR_IO = 2,
  GS_ERR_FORMAT = 3,
  GS_ERR_PRECONDITION = 4,
  GS_ERR_USAGE = 5,
  GS_ERR_VERIFICATION = 6,
  GS_ERR_ALLOCATION = 7,
  GS_ERR_INTERNAL = 8
} gs_status;

typedef struct gs_graph gs_graph;
typedef struct gs_allocation_map gs_allocation_map;
typedef struct gs_run_config gs_run_config;
typedef struct gs_run_report gs_run_report;

GS_API const char* gs_last_error(void);
GS_API const char* gs_status_name(gs_status status);
GS_API void gs_string_free(char* text);

/* ---- graphs ---- */

typedef struct gs_graph_meta {
  uint64_t max_out_degree_node;
  uint64_t max_out_degree;
  uint64_t max_in_degree;
  uint64_t estimated_diameter;
} gs_graph_meta;

GS_API gs_status gs_graph_load(const char* path, gs_graph** out);
GS_API gs_status gs_graph_write(const gs_graph* graph, const char* path);
GS_API gs_status gs_graph_from_edge_list(const char* path, int symmetrize, int dedupe, gs_graph** out);
/* offsets has num_nodes+1 entries; weights may be NULL. */
GS_API gs_status gs_graph_from_csr(uint64_t num_nodes, const uint64_t* offsets, uint64_t num_edges,
                                   const uint64_t* dests, const uint32_t* weights, gs_graph** out);
GS_API gs_status gs_graph_generate_rmat(uint32_t scale, uint64_t edge_factor, double a, double b, double c,
                                        double d, uint64_t seed, gs_graph** out);
GS_API gs_status gs_graph_assign_weights(const gs_graph* graph, uint64_t seed, uint32_t max_weight,
                                         gs_graph** out);
GS_API gs_status gs_graph_build_transpose(const gs_graph* graph, gs_graph** out);
GS_API gs_status gs_graph_symmetrize(const gs_graph* graph, gs_graph** out);
GS_API gs_status gs_graph_meta_compute(const gs_graph* graph, gs_graph_meta* out);
GS_API uint64_t gs_graph_num_nodes(const gs_graph* graph);
GS_API uint64_t gs_graph_num_edges(const gs_graph* graph);
GS_API int gs_graph_has_weights(const gs_graph* graph);
GS_API int gs_graph_has_transpose(const gs_graph* graph);
/* Copies out-adjacency of `node` into dests (capacity entries); *degree receives the full degree. */
GS_API gs_status gs_graph_out_neighbors(const gs_graph* graph, uint64_t node, uint64_t* dests, size_t capacity,
                                        uint64_t* degree);
GS_API uint64_t gs_graph_hash(const gs_graph* graph);
GS_API void gs_graph_free(gs_graph* graph);

/* ---- algorithms ---- */

#define GS_UNREACHED UINT64_MAX

typedef struct gs_run_stats {
  uint64_t rounds;
  uint64_t operator_applications;
  uint64_t edges_relaxed;
  double wall_ms;
} gs_run_stats;

typedef enum gs_bfs_variant { GS_BFS_PUSH_BSP_SPARSE = 0, GS_BFS_DIRECTION_OPT = 1 } gs_bfs_variant;
typedef enum gs_sssp_variant {
  GS_SSSP_DELTA_ASYNC = 0,
  GS_SSSP_DATA_DRIVEN_BSP = 1,
  GS_SSSP_BELLMAN_FORD_TOPO = 2
} gs_sssp_variant;
typedef enum gs_cc_variant { GS_CC_LABEL_PROP_BSP = 0, GS_CC_LABEL_PROP_SC = 1 } gs_cc_variant;

/* stats may be NULL. threads = 0 means one worker. delta = 0 selects the default. */
GS_API gs_status gs_bfs(const gs_graph* graph, uint64_t source, gs_bfs_variant variant, uint32_t threads,
                        uint64_t* distances, gs_run_stats* stats);
GS_API gs_status gs_sssp(const gs_graph* graph, uint64_t source, gs_sssp_variant variant, uint64_t delta,
                         uint32_t threads, uint64_t* distances, gs_run_stats* stats);
GS_API gs_status gs_cc(const gs_graph* graph, gs_cc_variant variant, uint32_t threads, uint64_t* labels,
                       gs_run_stats* stats);
GS_API gs_status gs_pagerank(const gs_graph* graph, double tolerance, uint64_t max_rounds, double damping,
                             uint32_t threads, double* ranks, gs_run_stats* stats);
GS_API gs_status gs_kcore(const gs_graph* graph, uint64_t k, uint32_t threads, uint8_t* in_core,
                          gs_run_stats* stats);
GS_API gs_status gs_bc(const gs_graph* graph, uint64_t source, uint32_t threads, double* scores,
                       gs_run_stats* stats);
GS_API gs_status gs_tc(const gs_graph* graph, uint32_t threads, uint64_t* triangles, gs_run_stats* stats);

/* ---- memory placement model ---- */

typedef struct gs_topology {
  uint32_t num_sockets;
  uint64_t socket_capacity;
  uint32_t threads_per_socket;
} gs_topology;

typedef enum gs_policy_kind { GS_POLICY_LOCAL = 0, GS_POLICY_INTERLEAVED = 1, GS_POLICY_BLOCKED = 2 } gs_policy_kind;

typedef struct gs_policy {
  gs_policy_kind kind;
  uint32_t local_socket;
} gs_policy;

typedef struct gs_page_plan {
  uint64_t page_size;
  uint64_t num_pages;
  uint64_t tlb_entries;
  uint64_t tlb_reach;
} gs_page_plan;

/* distribute_threads = 0 distributes over sockets, otherwise over that many threads. */
GS_API gs_status gs_plan_allocation(uint64_t total_bytes, gs_policy policy, const gs_topology* topology,
                                    uint32_t distribute_threads, uint64_t block_size, gs_allocation_map** out);
GS_API uint64_t gs_allocation_map_num_blocks(const gs_allocation_map* map);
GS_API gs_status gs_allocation_map_assignments(const gs_allocation_map* map, uint32_t* sockets, size_t capacity);
/* per_socket needs num_sockets entries; ratio is +inf when a socket holds nothing. */
GS_API gs_status gs_socket_balance(const gs_allocation_map* map, uint64_t* per_socket, size_t capacity,
                                   double* ratio);
GS_API void gs_allocation_map_free(gs_allocation_map* map);
GS_API gs_status gs_page_plan_compute(uint64_t total_bytes, uint64_t page_size, gs_page_plan* out);
/* Runs the write microbenchmark; *json_out receives the TimingReport (free with gs_string_free). */
GS_API gs_status gs_write_microbenchmark(uint64_t total_bytes, uint32_t threads, gs_policy policy,
                                         const gs_topology* topology, uint32_t distribute_threads,
                                         uint64_t page_size, char** json_out);

/* ---- benchmark harness ---- */

typedef enum gs_report_format { GS_REPORT_JSON = 0, GS_REPORT_CSV = 1 } gs_report_format;
typedef enum gs_verification { GS_VERIFY_SKIPPED = 0, GS_VERIFY_PASSED = 1, GS_VERIFY_FAILED = 2 } gs_verification;

/* Parses the arguments that follow `run`. Usage problems return GS_ERR_USAGE. */
GS_API gs_status gs_run_config_parse(int argc, const char* const* argv, gs_run_config** out);
GS_API char* gs_run_usage(void);
/* Test hook: corrupt one output label after the final trial. */
GS_API void gs_run_config_set_fault_injection(gs_run_config* config, int enabled);
GS_API gs_report_format gs_run_config_report_format(const gs_run_config* config);
/* Report path from --out, or NULL for stdout. */
GS_API const char* gs_run_config_out_path(const gs_run_config* config);
GS_API void gs_run_config_free(gs_run_config* config);

GS_API gs_status gs_execute(const gs_run_config* config, gs_run_report** out);
GS_API gs_verification gs_run_report_verification(const gs_run_report* report);
/* Mismatch description, empty when verification passed or was skipped. */
GS_API const char* gs_run_report_verification_detail(const gs_run_report* report);
GS_API size_t gs_run_report_num_trials(const gs_run_report* report);
GS_API gs_status gs_run_report_trial(const gs_run_report* report, size_t index, gs_run_stats* out);
GS_API double gs_run_report_mean_wall_ms(const gs_run_report* report);
GS_API gs_status gs_run_report_render(const gs_run_report* report, gs_report_format format, char** text_out);
/* Writes the rendered report to `path`, or to stdout when path is NULL. */
GS_API gs_status gs_run_report_emit(const gs_run_report* report, gs_report_format format, const char* path);
GS_API void gs_run_report_free(gs_run_report* report);

#ifdef __cplusplus
}
#endif

#endif /* GRAINSTONE_H */
