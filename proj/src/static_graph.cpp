#include "mtcut/static_graph.hpp"

#include <algorithm>
#include <string>

namespace mtcut {

StaticGraph StaticGraph::fromEdgeList(VertexId n, std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidInput("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                         std::to_string(e.v) + ")");
    }
    if (e.u == e.v) {
      throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.weight <= 0) {
      throw InvalidInput("non-positive edge weight on (" + std::to_string(e.u) + ", " +
                         std::to_string(e.v) + ")");
    }
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(normalized.begin(), normalized.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<WeightedEdge> merged;
  for (const auto& e : normalized) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  StaticGraph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : merged) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.arcs_.resize(merged.size() * 2);
  g.weighted_degree_.assign(n, 0);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : merged) {
    g.arcs_[fill[e.u]++] = {e.v, e.weight};
    g.arcs_[fill[e.v]++] = {e.u, e.weight};
    g.weighted_degree_[e.u] += e.weight;
    g.weighted_degree_[e.v] += e.weight;
    g.total_weight_ += e.weight;
  }
  for (VertexId v = 0; v < n; ++v) {
    std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Arc& a, const Arc& b) { return a.target < b.target; });
  }
  return g;
}

std::vector<WeightedEdge> StaticGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(numEdges());
  for (VertexId u = 0; u < numVertices(); ++u) {
    for (const auto& arc : neighbors(u)) {
      if (u < arc.target) out.push_back({u, arc.target, arc.weight});
    }
  }
  return out;
}

EdgeWeight cutValueUnchecked(const StaticGraph& g, const Assignment& a) {
  if (a.size() != g.numVertices()) {
    throw InfeasibleAssignment("assignment size " + std::to_string(a.size()) +
                               " does not match vertex count " + std::to_string(g.numVertices()));
  }
  EdgeWeight total = 0;
  for (VertexId u = 0; u < g.numVertices(); ++u) {
    for (const auto& arc : g.neighbors(u)) {
      if (u < arc.target && a[u] != a[arc.target]) total += arc.weight;
    }
  }
  return total;
}

EdgeWeight cutValue(const StaticGraph& g, const Assignment& a, std::span<const VertexId> terminals) {
  if (a.size() != g.numVertices()) {
    throw InfeasibleAssignment("assignment size " + std::to_string(a.size()) +
                               " does not match vertex count " + std::to_string(g.numVertices()));
  }
  const auto k = static_cast<BlockId>(terminals.size());
  for (VertexId v = 0; v < g.numVertices(); ++v) {
    if (a[v] < 0 || a[v] >= k) {
      throw InfeasibleAssignment("vertex " + std::to_string(v) + " has no valid block label");
    }
  }
  for (BlockId i = 0; i < k; ++i) {
    if (a[terminals[static_cast<std::size_t>(i)]] != i) {
      throw InfeasibleAssignment("terminal " + std::to_string(i) + " is not in its own block");
    }
  }
  return cutValueUnchecked(g, a);
}

VertexId connectedComponents(const StaticGraph& g, std::vector<VertexId>& component) {
  component.assign(g.numVertices(), kInvalidVertex);
  VertexId count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.numVertices(); ++s) {
    if (component[s] != kInvalidVertex) continue;
    component[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& arc : g.neighbors(v)) {
        if (component[arc.target] == kInvalidVertex) {
          component[arc.target] = count;
          stack.push_back(arc.target);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace mtcut
