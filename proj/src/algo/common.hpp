#pragma once

#include <chrono>

#include "grainstone/algorithms.hpp"
#include "grainstone/error.hpp"
#include "grainstone/parallel.hpp"

namespace grainstone::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline unsigned worker_count(unsigned requested) { return requested == 0 ? 1 : requested; }

inline void check_source(const Graph& graph, NodeId source) {
  if (source >= graph.num_nodes())
    throw Error(Errc::invalid_argument, "source " + std::to_string(source) + " is not a node (num_nodes=" +
                                            std::to_string(graph.num_nodes()) + ")");
}

// Work counters accumulated per worker, folded into RunStats at the end.
struct Counters {
  explicit Counters(unsigned workers) : applications(workers), edges(workers) {}
  WorkerCounters applications;
  WorkerCounters edges;

  void fold_into(RunStats& stats) const {
    stats.operator_applications += applications.total();
    stats.edges_relaxed += edges.total();
  }
};

}  // namespace grainstone::detail
