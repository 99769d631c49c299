#include <charconv>
#include <fstream>
#include <string>

#include "grainstone/error.hpp"
#include "grainstone/graph.hpp"

namespace grainstone {

namespace {

[[noreturn]] void parse_error(std::uint64_t line, const std::string& what) {
  throw Error(Errc::format, "edge list line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_number(std::string_view token, std::uint64_t line) {
  if (!token.empty() && token.front() == '-') parse_error(line, "negative value '" + std::string(token) + "'");
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    parse_error(line, "not a decimal integer: '" + std::string(token) + "'");
  return value;
}

}  // namespace

Graph ingest_edge_list(const std::filesystem::path& path, bool symmetrize, bool dedupe) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<Weight> weights;
  std::optional<bool> weighted;
  std::uint64_t num_nodes = 0;
  std::string text;
  std::uint64_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::vector<std::string_view> tokens;
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = std::min(rest.find_first_of(" \t\r"), rest.size());
      tokens.push_back(rest.substr(0, end));
      rest.remove_prefix(end);
    }
    if (tokens.empty() || tokens.front().front() == '#' || tokens.front().front() == '%') continue;
    if (tokens.size() != 2 && tokens.size() != 3) parse_error(line, "expected 'src dst [weight]'");
    const bool has_weight = tokens.size() == 3;
    if (weighted && *weighted != has_weight) parse_error(line, "weight column present on some lines only");
    weighted = has_weight;

    const auto src = parse_number(tokens[0], line);
    const auto dst = parse_number(tokens[1], line);
    edges.emplace_back(src, dst);
    if (has_weight) {
      const auto w = parse_number(tokens[2], line);
      if (w > std::numeric_limits<Weight>::max()) parse_error(line, "weight exceeds 32 bits");
      weights.push_back(static_cast<Weight>(w));
    }
    num_nodes = std::max({num_nodes, src + 1, dst + 1});
  }
  EdgeListOptions options{.symmetrize = symmetrize, .dedupe = dedupe, .remove_self_loops = false};
  return build_from_edges(num_nodes, edges, weights, options, weighted.value_or(false));
}

}  // namespace grainstone
