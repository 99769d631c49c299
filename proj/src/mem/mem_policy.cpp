#include "grainstone/mem_policy.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "grainstone/error.hpp"

namespace grainstone::mem {

void Topology::validate() const {
  if (num_sockets < 1) throw Error(Errc::invalid_argument, "topology needs at least one socket");
  if (socket_capacity == 0) throw Error(Errc::invalid_argument, "socket capacity must be positive");
  if (threads_per_socket == 0) throw Error(Errc::invalid_argument, "threads per socket must be positive");
}

std::uint32_t Topology::socket_of_thread(std::uint32_t thread) const {
  return (thread / threads_per_socket) % num_sockets;
}

Policy parse_policy(std::string_view text) {
  if (text == "interleaved") return Policy::interleaved();
  if (text == "blocked") return Policy::blocked();
  if (text.starts_with("local:")) {
    const auto digits = text.substr(6);
    std::uint32_t socket = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), socket);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return Policy::local(socket);
  }
  if (text == "local") return Policy::local(0);
  throw Error(Errc::invalid_argument, "unknown policy '" + std::string(text) + "' (local:S|interleaved|blocked)");
}

std::string to_string(const Policy& policy) {
  switch (policy.kind) {
    case PolicyKind::local:
      return "local:" + std::to_string(policy.local_socket);
    case PolicyKind::interleaved:
      return "interleaved";
    case PolicyKind::blocked:
      return "blocked";
  }
  return "?";
}

std::uint64_t AllocationMap::block_bytes(std::uint64_t i) const {
  if (i + 1 < assignments.size()) return block_size;
  return total_bytes - block_size * (assignments.size() - 1);
}

AllocationMap plan_allocation(std::uint64_t total_bytes, const Policy& policy, const Topology& topology,
                              Distribution distribute, std::uint64_t block_size) {
  topology.validate();
  if (total_bytes == 0) throw Error(Errc::invalid_argument, "allocation size must be positive");
  if (block_size == 0) throw Error(Errc::invalid_argument, "block size must be positive");

  AllocationMap map;
  map.total_bytes = total_bytes;
  map.block_size = block_size;
  map.policy = policy;
  map.num_sockets = topology.num_sockets;
  const std::uint64_t blocks = (total_bytes + block_size - 1) / block_size;
  map.assignments.resize(blocks);

  if (policy.kind == PolicyKind::local) {
    if (policy.local_socket >= topology.num_sockets)
      throw Error(Errc::invalid_argument, "local socket " + std::to_string(policy.local_socket) + " does not exist");
    const long double capacity_total =
        static_cast<long double>(topology.socket_capacity) * static_cast<long double>(topology.num_sockets);
    if (static_cast<long double>(total_bytes) > capacity_total)
      throw Error(Errc::invalid_argument, "local allocation exceeds the capacity of all sockets");
    // Fill the preferred socket, then spill round-robin to the following ones.
    std::uint32_t socket = policy.local_socket;
    std::uint64_t used = 0;
    for (std::uint64_t i = 0; i < blocks; ++i) {
      const auto bytes = map.block_bytes(i);
      if (used + bytes > topology.socket_capacity) {
        socket = (socket + 1) % topology.num_sockets;
        used = 0;
      }
      map.assignments[i] = socket;
      used += bytes;
    }
    return map;
  }

  const std::uint64_t units = distribute.over_sockets() ? topology.num_sockets : distribute.threads;
  auto unit_socket = [&](std::uint64_t unit) {
    return distribute.over_sockets() ? static_cast<std::uint32_t>(unit)
                                     : topology.socket_of_thread(static_cast<std::uint32_t>(unit));
  };

  if (policy.kind == PolicyKind::interleaved) {
    for (std::uint64_t i = 0; i < blocks; ++i) map.assignments[i] = unit_socket(i % units);
    return map;
  }

  // Blocked: contiguous runs, the first (blocks mod units) runs one block longer.
  const std::uint64_t base = blocks / units;
  const std::uint64_t longer = blocks % units;
  std::uint64_t i = 0;
  for (std::uint64_t unit = 0; unit < units; ++unit) {
    const auto run = base + (unit < longer ? 1 : 0);
    for (std::uint64_t j = 0; j < run; ++j) map.assignments[i++] = unit_socket(unit);
  }
  return map;
}

SocketBalance socket_balance(const AllocationMap& map) {
  SocketBalance balance;
  balance.per_socket_bytes.assign(map.num_sockets, 0);
  for (std::uint64_t i = 0; i < map.assignments.size(); ++i)
    balance.per_socket_bytes[map.assignments[i]] += map.block_bytes(i);
  const auto [lo, hi] = std::minmax_element(balance.per_socket_bytes.begin(), balance.per_socket_bytes.end());
  balance.ratio = *lo == 0 ? std::numeric_limits<double>::infinity()
                           : static_cast<double>(*hi) / static_cast<double>(*lo);
  return balance;
}

PagePlan page_plan(std::uint64_t total_bytes, std::uint64_t page_size, std::uint64_t tlb_entries) {
  if (page_size != kSmallPage && page_size != kHugePage)
    throw Error(Errc::invalid_argument, "unsupported page size " + std::to_string(page_size));
  PagePlan plan;
  plan.page_size = page_size;
  plan.num_pages = total_bytes / page_size + (total_bytes % page_size != 0 ? 1 : 0);
  plan.tlb_entries = tlb_entries ? tlb_entries : (page_size == kSmallPage ? kSmallPageTlbEntries : kHugePageTlbEntries);
  plan.tlb_reach = plan.tlb_entries * page_size;
  return plan;
}

std::uint64_t parse_page_size(std::string_view text) {
  if (text == "4k" || text == "4K" || text == "4096") return kSmallPage;
  if (text == "2m" || text == "2M" || text == "2097152") return kHugePage;
  throw Error(Errc::invalid_argument, "unsupported page size '" + std::string(text) + "' (4k|2m)");
}

std::string page_size_name(std::uint64_t page_size) {
  return page_size == kHugePage ? "2m" : page_size == kSmallPage ? "4k" : std::to_string(page_size);
}

std::vector<ThreadRange> partition(std::uint64_t total, std::uint32_t parts) {
  std::vector<ThreadRange> ranges(parts);
  const std::uint64_t base = total / parts;
  const std::uint64_t longer = total % parts;
  std::uint64_t at = 0;
  for (std::uint32_t t = 0; t < parts; ++t) {
    ranges[t].begin = at;
    at += base + (t < longer ? 1 : 0);
    ranges[t].end = at;
  }
  return ranges;
}

}  // namespace grainstone::mem
