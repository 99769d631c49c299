#include <cstring>
#include <fstream>
#include <iterator>

#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"

// CSR-bin layout (little-endian):
//   u64 version, u64 edge_data_size (0 or 4), u64 num_nodes, u64 num_edges,
//   num_nodes x u64 cumulative end offsets,
//   num_edges x u32 destinations (u64 in version 2, used when num_nodes >= 2^32),
//   zero padding to an 8-byte boundary,
//   num_edges x u32 weights when edge_data_size == 4.

namespace grainstone {

namespace {

constexpr std::uint64_t kHeaderBytes = 32;

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> bytes) : bytes_(std::move(bytes)) {}

  std::uint64_t pos() const { return pos_; }
  std::uint64_t remaining() const { return bytes_.size() - pos_; }

  void require(std::uint64_t count, const char* what) const {
    if (remaining() < count) throw FormatError(pos_, std::string("truncated ") + what);
  }

  std::uint64_t read(int width) {
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i) value |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += width;
    return value;
  }

  void skip(std::uint64_t count) { pos_ += count; }

 private:
  std::vector<unsigned char> bytes_;
  std::uint64_t pos_ = 0;
};

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}

  void put(std::uint64_t value, int width) {
    char buf[8];
    for (int i = 0; i < width; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out_.write(buf, width);
    written_ += width;
  }

  void pad_to(std::uint64_t alignment) {
    while (written_ % alignment != 0) put(0, 1);
  }

 private:
  std::ofstream& out_;
  std::uint64_t written_ = 0;
};

}  // namespace

Graph load_csr_bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(bytes));

  r.require(kHeaderBytes, "header");
  const auto version = r.read(8);
  if (version != 1 && version != 2) throw FormatError(0, "unsupported version " + std::to_string(version));
  const auto edge_data_size = r.read(8);
  if (edge_data_size != 0 && edge_data_size != 4)
    throw FormatError(8, "unsupported edge data size " + std::to_string(edge_data_size));
  const auto num_nodes = r.read(8);
  const auto num_edges = r.read(8);
  const int dest_width = version == 1 ? 4 : 8;

  if (num_nodes > r.remaining() / 8) throw FormatError(r.pos(), "truncated offsets array");
  std::vector<EdgeIndex> offsets(num_nodes + 1, 0);
  for (std::uint64_t v = 0; v < num_nodes; ++v) {
    const auto at = r.pos();
    offsets[v + 1] = r.read(8);
    if (offsets[v + 1] < offsets[v]) throw FormatError(at, "offsets are not non-decreasing");
  }
  if (offsets[num_nodes] != num_edges)
    throw FormatError(r.pos() - (num_nodes ? 8 : 0), "last offset does not equal num_edges");

  if (num_edges > r.remaining() / dest_width) throw FormatError(r.pos(), "truncated destination array");
  std::vector<NodeId> dests(num_edges);
  for (auto& d : dests) {
    const auto at = r.pos();
    d = r.read(dest_width);
    if (d >= num_nodes) throw FormatError(at, "destination out of range: " + std::to_string(d));
  }

  if (edge_data_size == 0) return Graph::from_csr(std::move(offsets), std::move(dests));

  const auto pad = (8 - r.pos() % 8) % 8;
  r.require(pad, "padding");
  r.skip(pad);
  if (num_edges > r.remaining() / 4) throw FormatError(r.pos(), "truncated weight array");
  std::vector<Weight> weights(num_edges);
  for (auto& w : weights) w = static_cast<Weight>(r.read(4));
  return Graph::from_csr(std::move(offsets), std::move(dests), std::move(weights));
}

void write_csr_bin(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
  const auto& csr = graph.out_csr();
  const bool wide = graph.num_nodes() >= (std::uint64_t{1} << 32);
  Writer w(out);
  w.put(wide ? 2 : 1, 8);
  w.put(csr.weighted ? 4 : 0, 8);
  w.put(graph.num_nodes(), 8);
  w.put(graph.num_edges(), 8);
  for (std::uint64_t v = 1; v < csr.offsets.size(); ++v) w.put(csr.offsets[v], 8);
  for (auto d : csr.dests) w.put(d, wide ? 8 : 4);
  w.pad_to(8);
  if (csr.weighted) {
    for (auto weight : csr.weights) w.put(weight, 4);
  }
  out.flush();
  if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

}  // namespace grainstone
