#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grainstone::mem {

inline constexpr std::uint64_t kSmallPage = 4096;
inline constexpr std::uint64_t kHugePage = 2 * 1024 * 1024;
inline constexpr std::uint64_t kGiB = std::uint64_t{1} << 30;

// Data TLB entries per page size on the reference machine.
inline constexpr std::uint64_t kSmallPageTlbEntries = 64;
inline constexpr std::uint64_t kHugePageTlbEntries = 32;

struct Topology {
  std::uint32_t num_sockets = 2;
  std::uint64_t socket_capacity = 192 * kGiB;
  std::uint32_t threads_per_socket = 24;

  void validate() const;
  // Socket hosting `thread`; threads fill socket 0 first.
  std::uint32_t socket_of_thread(std::uint32_t thread) const;
};

enum class PolicyKind { local, interleaved, blocked };

struct Policy {
  PolicyKind kind = PolicyKind::interleaved;
  std::uint32_t local_socket = 0;  // used by PolicyKind::local

  static Policy local(std::uint32_t socket) { return {PolicyKind::local, socket}; }
  static Policy interleaved() { return {PolicyKind::interleaved, 0}; }
  static Policy blocked() { return {PolicyKind::blocked, 0}; }

  bool operator==(const Policy&) const = default;
};

// "local:S" | "interleaved" | "blocked"
Policy parse_policy(std::string_view text);
std::string to_string(const Policy& policy);

// Units the interleaved/blocked policies cycle over: sockets, or threads
// (each thread's share lands on the socket hosting that thread).
struct Distribution {
  std::uint32_t threads = 0;  // 0 = distribute over sockets

  static Distribution sockets() { return {0}; }
  static Distribution over_threads(std::uint32_t t) { return {t}; }
  bool over_sockets() const { return threads == 0; }
};

struct AllocationMap {
  std::uint64_t total_bytes = 0;
  std::uint64_t block_size = 0;
  Policy policy;
  std::uint32_t num_sockets = 0;
  std::vector<std::uint32_t> assignments;  // socket per block

  // Bytes in block i; only the last block may be partial.
  std::uint64_t block_bytes(std::uint64_t i) const;
};

AllocationMap plan_allocation(std::uint64_t total_bytes, const Policy& policy, const Topology& topology,
                              Distribution distribute, std::uint64_t block_size = kSmallPage);

struct SocketBalance {
  std::vector<std::uint64_t> per_socket_bytes;
  // max/min over sockets; +infinity when some socket holds nothing.
  double ratio = 1.0;
};

SocketBalance socket_balance(const AllocationMap& map);

struct PagePlan {
  std::uint64_t page_size = 0;
  std::uint64_t num_pages = 0;
  std::uint64_t tlb_entries = 0;
  std::uint64_t tlb_reach = 0;  // entries x page size
};

// Throws for page sizes other than 4 KiB and 2 MiB. tlb_entries = 0 selects
// the default for the page size.
PagePlan page_plan(std::uint64_t total_bytes, std::uint64_t page_size, std::uint64_t tlb_entries = 0);

// "4k" | "2m"
std::uint64_t parse_page_size(std::string_view text);
std::string page_size_name(std::uint64_t page_size);

struct ThreadRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

struct TimingReport {
  std::uint64_t total_bytes = 0;
  std::uint32_t threads = 0;
  Policy policy;
  std::uint64_t page_size = 0;
  std::vector<std::uint64_t> per_socket_bytes;
  std::vector<std::uint64_t> per_thread_bytes;
  std::vector<ThreadRange> thread_ranges;
  double wall_ms = 0.0;
  std::uint64_t checksum = 0;
  AllocationMap map;
  bool numa_migration_should_be_off = true;

  std::string to_json() const;
};

// Byte written at offset i by the microbenchmark.
inline std::uint8_t fill_pattern(std::uint64_t i) { return static_cast<std::uint8_t>((i * 131 + 7) & 0xFF); }

// Allocates `total_bytes`, then `threads` workers each write a contiguous
// range exactly once. Placement follows the planned map only in the model;
// the host allocator decides the physical pages.
TimingReport write_microbenchmark(std::uint64_t total_bytes, std::uint32_t threads, const Policy& policy,
                                  const Topology& topology, std::uint64_t page_size = kSmallPage,
                                  Distribution distribute = Distribution::sockets());

// Splits [0, total) into `parts` contiguous ranges whose sizes differ by at most one.
std::vector<ThreadRange> partition(std::uint64_t total, std::uint32_t parts);

}  // namespace grainstone::mem
