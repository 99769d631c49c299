#include "grainstone/worklist.hpp"

#include <numeric>

namespace grainstone {

DenseFrontier::DenseFrontier(std::uint64_t num_nodes)
    : num_nodes_(num_nodes), current_((num_nodes + 63) / 64, 0), next_((num_nodes + 63) / 64, 0) {}

std::uint64_t DenseFrontier::swap() {
  std::swap(current_, next_);
  std::fill(next_.begin(), next_.end(), 0);
  size_ = std::accumulate(current_.begin(), current_.end(), std::uint64_t{0},
                          [](std::uint64_t acc, std::uint64_t w) { return acc + std::popcount(w); });
  ++round_;
  return size_;
}

std::vector<NodeId> DenseFrontier::members() const {
  std::vector<NodeId> out;
  out.reserve(size_);
  for (std::uint64_t w = 0; w < current_.size(); ++w) {
    for (std::uint64_t bits = current_[w]; bits; bits &= bits - 1) out.push_back((w << 6) + std::countr_zero(bits));
  }
  return out;
}

}  // namespace grainstone
