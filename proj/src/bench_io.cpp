#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>

#include "mtcut/bench.hpp"

namespace mtcut::bench {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parseInteger(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

bool isComment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string_view::npos && line[pos] == '%';
}

bool isBlank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

struct Arc {
  VertexId u;
  VertexId v;
  EdgeWeight w;
  std::size_t line;
};

}  // namespace

StaticGraph parseGraphFile(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::size_t header_line = 0;

  std::vector<std::string_view> header;
  std::string header_text;
  while (std::getline(in, raw)) {
    ++line_no;
    if (isComment(raw) || isBlank(raw)) continue;
    header_text = raw;
    header = tokenize(header_text);
    header_line = line_no;
    break;
  }
  if (header.empty()) throw ParseError(line_no, "missing header");
  if (header.size() < 2 || header.size() > 4) throw ParseError(header_line, "header must be 'n m [fmt [ncon]]'");

  const std::int64_t n64 = parseInteger(header[0], header_line);
  const std::int64_t m64 = parseInteger(header[1], header_line);
  if (n64 < 0 || m64 < 0 || n64 >= static_cast<std::int64_t>(kInvalidVertex)) {
    throw ParseError(header_line, "invalid vertex or edge count");
  }
  bool edge_weights = false;
  bool vertex_weights = false;
  bool vertex_sizes = false;
  std::int64_t ncon = 1;
  if (header.size() >= 3) {
    const std::string_view fmt = header[2];
    if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string_view::npos) {
      throw ParseError(header_line, "invalid format code '" + std::string(fmt) + "'");
    }
    const std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
    vertex_sizes = padded[0] == '1';
    vertex_weights = padded[1] == '1';
    edge_weights = padded[2] == '1';
  }
  if (header.size() == 4) {
    ncon = parseInteger(header[3], header_line);
    if (ncon < 1) throw ParseError(header_line, "invalid constraint count");
  }
  const std::size_t skip = (vertex_sizes ? 1 : 0) + (vertex_weights ? static_cast<std::size_t>(ncon) : 0);

  const auto n = static_cast<VertexId>(n64);
  std::vector<Arc> arcs;
  VertexId u = 0;
  while (u < n && std::getline(in, raw)) {
    ++line_no;
    if (isComment(raw)) continue;
    const auto tokens = tokenize(raw);
    if (tokens.size() < skip) throw ParseError(line_no, "missing vertex weights");
    const std::size_t stride = edge_weights ? 2 : 1;
    if ((tokens.size() - skip) % stride != 0) throw ParseError(line_no, "neighbor without weight");
    for (std::size_t i = skip; i < tokens.size(); i += stride) {
      const std::int64_t id = parseInteger(tokens[i], line_no);
      if (id < 1 || id > n64) throw ParseError(line_no, "neighbor " + std::to_string(id) + " out of range");
      const auto v = static_cast<VertexId>(id - 1);
      if (v == u) throw ParseError(line_no, "self-loop at vertex " + std::to_string(id));
      const EdgeWeight w = edge_weights ? parseInteger(tokens[i + 1], line_no) : 1;
      if (w < 1) throw ParseError(line_no, "edge weight must be positive");
      arcs.push_back({u, v, w, line_no});
    }
    ++u;
  }
  if (u < n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " vertex lines, found " + std::to_string(u));
  }
  while (std::getline(in, raw)) {
    ++line_no;
    if (!isComment(raw) && !isBlank(raw)) throw ParseError(line_no, "more vertex lines than the header declares");
  }

  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::vector<WeightedEdge> edges;
  edges.reserve(arcs.size() / 2);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (i > 0 && arcs[i - 1].u == a.u && arcs[i - 1].v == a.v) {
      throw ParseError(a.line, "duplicate neighbor " + std::to_string(a.v + 1));
    }
    const auto it = std::lower_bound(arcs.begin(), arcs.end(), a, [](const Arc& x, const Arc& y) {
      return x.u != y.v ? x.u < y.v : x.v < y.u;
    });
    if (it == arcs.end() || it->u != a.v || it->v != a.u) {
      throw ParseError(a.line, "edge " + std::to_string(a.u + 1) + "-" + std::to_string(a.v + 1) +
                                   " missing from the adjacency of " + std::to_string(a.v + 1));
    }
    if (it->w != a.w) {
      throw ParseError(a.line, "edge " + std::to_string(a.u + 1) + "-" + std::to_string(a.v + 1) +
                                   " has different weights in the two directions");
    }
    if (a.u < a.v) edges.push_back({a.u, a.v, a.w});
  }
  if (edges.size() != static_cast<std::size_t>(m64)) {
    throw ParseError(header_line, "header declares " + std::to_string(m64) + " edges, adjacency lists have " +
                                      std::to_string(edges.size()));
  }
  return StaticGraph::fromEdgeList(n, edges);
}

StaticGraph readGraphFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open graph file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseGraphFile(buffer.str());
}

std::string writeGraphFile(const StaticGraph& g) {
  std::string out = std::to_string(g.numVertices()) + " " + std::to_string(g.numEdges()) + " 1\n";
  for (VertexId v = 0; v < g.numVertices(); ++v) {
    bool first = true;
    for (const auto& arc : g.neighbors(v)) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(arc.target + 1);
      out += ' ';
      out += std::to_string(arc.weight);
    }
    out += '\n';
  }
  return out;
}

StaticGraph torusGraph(VertexId rows, VertexId cols, EdgeWeight max_weight, std::uint64_t seed) {
  if (rows < 3 || cols < 3) throw InvalidInput("torus needs at least 3 rows and 3 columns");
  if (max_weight < 1) throw InvalidInput("max_weight must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<EdgeWeight> weight(1, max_weight);
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * cols * 2);
  auto id = [cols](VertexId r, VertexId c) { return r * cols + c; };
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      edges.push_back({id(r, c), id(r, (c + 1) % cols), weight(rng)});
      edges.push_back({id(r, c), id((r + 1) % rows, c), weight(rng)});
    }
  }
  return StaticGraph::fromEdgeList(rows * cols, edges);
}

}  // namespace mtcut::bench
