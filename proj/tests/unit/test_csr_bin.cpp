#include <cstring>
#include <fstream>

#include "doctest.h"
#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"
#include "support/graphs.hpp"

using namespace grainstone;
using namespace grainstone::testing;

namespace {

struct Bytes {
  std::vector<unsigned char> data;

  Bytes& u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) data.push_back(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  Bytes& u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) data.push_back(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  void write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }
};

std::uint64_t expect_format_error(const std::filesystem::path& path, const std::string& needle) {
  try {
    load_csr_bin(path);
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    return e.offset();
  }
  FAIL("expected FormatError containing '" << needle << "'");
  return 0;
}

}  // namespace

TEST_CASE("smallest nonempty file decodes to one edge") {
  TempDir dir;
  Bytes{}.u64(1).u64(0).u64(2).u64(1).u64(1).u64(1).u32(1).u32(0).write(dir / "g.bin");
  const auto g = load_csr_bin(dir / "g.bin");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.out_neighbors(0)[0] == 1);
  CHECK(g.out_degree(1) == 0);
  CHECK_FALSE(g.has_weights());
}

TEST_CASE("file sizes") {
  TempDir dir;
  SUBCASE("empty graph is a 32-byte header") {
    write_csr_bin(Graph(), dir / "e.bin");
    CHECK(std::filesystem::file_size(dir / "e.bin") == 32);
    CHECK(load_csr_bin(dir / "e.bin").num_nodes() == 0);
  }
  SUBCASE("one edge: header + offsets + dests + pad") {
    const auto g = graph_of(2, {{0, 1}});
    write_csr_bin(g, dir / "g.bin");
    CHECK(std::filesystem::file_size(dir / "g.bin") == 32 + 2 * 8 + 4 + 4);
    write_csr_bin(assign_random_weights(g, 1), dir / "w.bin");
    CHECK(std::filesystem::file_size(dir / "w.bin") == 32 + 2 * 8 + 4 + 4 + 4);
  }
  SUBCASE("even edge counts need no padding") {
    write_csr_bin(graph_of(3, {{0, 1}, {1, 2}}), dir / "g.bin");
    CHECK(std::filesystem::file_size(dir / "g.bin") == 32 + 3 * 8 + 2 * 4);
  }
}

TEST_CASE("header fields are little-endian as documented") {
  TempDir dir;
  const auto g = assign_random_weights(graph_of(3, {{0, 1}, {0, 2}, {2, 1}}), 7);
  write_csr_bin(g, dir / "g.bin");
  std::ifstream in(dir / "g.bin", std::ios::binary);
  std::vector<unsigned char> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto u64_at = [&](std::size_t at) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[at + static_cast<std::size_t>(i)];
    return v;
  };
  CHECK(u64_at(0) == 1);
  CHECK(u64_at(8) == 4);
  CHECK(u64_at(16) == 3);
  CHECK(u64_at(24) == 3);
  CHECK(u64_at(32) == 2);  // end offsets
  CHECK(u64_at(40) == 2);
  CHECK(u64_at(48) == 3);
  CHECK(b.size() == 56 + 12 + 4 + 12);
}

TEST_CASE("round trip is bit-identical") {
  TempDir dir;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = rmat(9, 4 * seed, seed);
    if (seed % 2 == 0) g = assign_random_weights(g, seed);
    write_csr_bin(g, dir / "g.bin");
    const auto back = load_csr_bin(dir / "g.bin");
    CHECK(back.out_csr() == g.out_csr());
    CHECK(hash_csr(back) == hash_csr(g));
  }
  SUBCASE("graph with isolated trailing nodes") {
    const auto g = graph_of(6, {{0, 1}});
    write_csr_bin(g, dir / "g.bin");
    CHECK(load_csr_bin(dir / "g.bin") == g);
  }
}

TEST_CASE("malformed files report the byte offset") {
  TempDir dir;
  const auto path = dir / "bad.bin";
  SUBCASE("destination out of range") {
    Bytes b;
    b.u64(1).u64(0).u64(5).u64(2).u64(1).u64(2).u64(2).u64(2).u64(2).u32(1).u32(7);
    b.write(path);
    CHECK(expect_format_error(path, "destination out of range") == 32 + 5 * 8 + 4);
  }
  SUBCASE("truncated header") {
    Bytes{}.u64(1).u64(0).write(path);
    expect_format_error(path, "truncated");
  }
  SUBCASE("bad version") {
    Bytes{}.u64(9).u64(0).u64(0).u64(0).write(path);
    CHECK(expect_format_error(path, "version") == 0);
  }
  SUBCASE("bad edge data size") {
    Bytes{}.u64(1).u64(3).u64(0).u64(0).write(path);
    CHECK(expect_format_error(path, "edge data size") == 8);
  }
  SUBCASE("decreasing offsets") {
    Bytes{}.u64(1).u64(0).u64(2).u64(1).u64(1).u64(0).u32(0).u32(0).write(path);
    expect_format_error(path, "non-decreasing");
  }
  SUBCASE("last offset disagrees with edge count") {
    Bytes{}.u64(1).u64(0).u64(2).u64(2).u64(1).u64(1).u32(0).u32(0).write(path);
    expect_format_error(path, "num_edges");
  }
  SUBCASE("truncated destinations") {
    Bytes{}.u64(1).u64(0).u64(2).u64(2).u64(1).u64(2).u32(0).write(path);
    expect_format_error(path, "truncated destination");
  }
  SUBCASE("truncated weights") {
    Bytes{}.u64(1).u64(4).u64(2).u64(1).u64(1).u64(1).u32(1).u32(0).write(path);
    expect_format_error(path, "truncated weight");
  }
  SUBCASE("missing file is an I/O error") {
    try {
      load_csr_bin(dir / "absent.bin");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::io);
    }
  }
}
