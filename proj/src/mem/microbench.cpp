#include <chrono>
#include <cstdlib>
#include <memory>

#include "json.hpp"
#include <thread>

#if defined(__linux__)
#include <sys/mman.h>
#endif

#include "grainstone/error.hpp"
#include "grainstone/mem_policy.hpp"

namespace grainstone::mem {

namespace {

struct FreeDeleter {
  void operator()(std::uint8_t* p) const { std::free(p); }
};

std::unique_ptr<std::uint8_t, FreeDeleter> allocate_untouched(std::uint64_t bytes, std::uint64_t page_size) {
  const std::uint64_t rounded = (bytes + page_size - 1) / page_size * page_size;
  auto* raw = static_cast<std::uint8_t*>(std::aligned_alloc(page_size, rounded));
  if (!raw) throw Error(Errc::allocation, "cannot allocate " + std::to_string(bytes) + " bytes");
#if defined(__linux__) && defined(MADV_HUGEPAGE)
  if (page_size == kHugePage) ::madvise(raw, rounded, MADV_HUGEPAGE);
#endif
  return std::unique_ptr<std::uint8_t, FreeDeleter>(raw);
}

}  // namespace

TimingReport write_microbenchmark(std::uint64_t total_bytes, std::uint32_t threads, const Policy& policy,
                                  const Topology& topology, std::uint64_t page_size, Distribution distribute) {
  if (threads == 0) throw Error(Errc::invalid_argument, "threads must be >= 1");
  page_plan(total_bytes, page_size);  // validates the page size

  TimingReport report;
  report.total_bytes = total_bytes;
  report.threads = threads;
  report.policy = policy;
  report.page_size = page_size;
  report.map = plan_allocation(total_bytes, policy, topology, distribute, page_size);
  report.per_socket_bytes = socket_balance(report.map).per_socket_bytes;
  report.thread_ranges = partition(total_bytes, threads);
  for (const auto& r : report.thread_ranges) report.per_thread_bytes.push_back(r.end - r.begin);

  auto buffer = allocate_untouched(total_bytes, page_size);
  std::uint8_t* data = buffer.get();

  const auto start = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::uint32_t t = 0; t < threads; ++t) {
      const auto range = report.thread_ranges[t];
      workers.emplace_back([data, range] {
        for (auto i = range.begin; i < range.end; ++i) data[i] = fill_pattern(i);
      });
    }
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::uint64_t checksum = 0;
  for (std::uint64_t i = 0; i < total_bytes; ++i) checksum += data[i];
  report.checksum = checksum;
  return report;
}

std::string TimingReport::to_json() const {
  nlohmann::ordered_json j;
  j["total_bytes"] = total_bytes;
  j["threads"] = threads;
  j["policy"] = to_string(policy);
  j["page_size"] = page_size;
  j["per_socket_bytes"] = per_socket_bytes;
  j["wall_ms"] = wall_ms;
  j["per_thread_bytes"] = per_thread_bytes;
  j["checksum"] = checksum;
  j["num_blocks"] = map.assignments.size();
  j["numa_migration"] = numa_migration_should_be_off ? "off recommended" : "unchanged";
  return j.dump(2);
}

}  // namespace grainstone::mem
