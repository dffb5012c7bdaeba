#include "mtcut/contractable_graph.hpp"

#include <algorithm>
#include <string>

namespace mtcut {

ContractableGraph::ContractableGraph(const StaticGraph& g)
    : adjacency_(g.numVertices()),
      weighted_degree_(g.numVertices(), 0),
      alive_(g.numVertices(), 1),
      parent_(g.numVertices()),
      original_count_(g.numVertices()),
      live_count_(g.numVertices()),
      edge_count_(g.numEdges()) {
  for (VertexId v = 0; v < g.numVertices(); ++v) {
    parent_[v] = v;
    adjacency_[v].reserve(g.degree(v));
    for (const auto& arc : g.neighbors(v)) adjacency_[v].emplace(arc.target, arc.weight);
    weighted_degree_[v] = g.weightedDegree(v);
  }
}

ContractableGraph ContractableGraph::fromEdgeList(VertexId n, std::span<const WeightedEdge> edges) {
  return ContractableGraph(StaticGraph::fromEdgeList(n, edges));
}

EdgeWeight ContractableGraph::edgeWeight(VertexId u, VertexId v) const {
  const auto& nb = adjacency_[u];
  const auto it = nb.find(v);
  return it == nb.end() ? 0 : it->second;
}

std::vector<VertexId> ContractableGraph::liveVertices() const {
  std::vector<VertexId> out;
  out.reserve(live_count_);
  for (VertexId v = 0; v < slotCount(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<WeightedEdge> ContractableGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < slotCount(); ++u) {
    if (!alive_[u]) continue;
    for (const auto& [v, w] : adjacency_[u]) {
      if (u < v) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

VertexId ContractableGraph::find(VertexId s) const {
  VertexId root = s;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[s] != root) {
    const VertexId next = parent_[s];
    parent_[s] = root;
    s = next;
  }
  return root;
}

VertexId ContractableGraph::representative(VertexId s) const { return find(s); }

VertexId ContractableGraph::currentVertex(VertexId original) const {
  return find(base_ ? (*base_)[original] : original);
}

void ContractableGraph::mergeVertices(VertexId u, VertexId v) {
  if (u == v) return;
  if (!isAlive(u) || !isAlive(v)) {
    throw NotFound("cannot merge dead vertex " + std::to_string(isAlive(u) ? v : u));
  }
  auto& into = adjacency_[u];
  auto& from = adjacency_[v];
  for (const auto& [x, w] : from) {
    auto& nx = adjacency_[x];
    nx.erase(v);
    if (x == u) {
      // (u, v) becomes a self-loop and is dropped
      weighted_degree_[u] -= w;
      --edge_count_;
      continue;
    }
    auto [it, inserted] = into.try_emplace(x, w);
    if (!inserted) {
      it->second += w;
      --edge_count_;
    }
    nx[u] = it->second;
    weighted_degree_[u] += w;
  }
  from.clear();
  Neighborhood().swap(from);
  weighted_degree_[v] = 0;
  alive_[v] = 0;
  parent_[v] = u;
  --live_count_;
}

void ContractableGraph::contractEdge(VertexId u, VertexId v) {
  if (u == v || !isAlive(u) || !isAlive(v) || !hasEdge(u, v)) {
    throw NotFound("no live edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  mergeVertices(u, v);
}

void ContractableGraph::contractVertexSet(std::span<const VertexId> set, VertexId into) {
  const VertexId target = find(into);
  for (const VertexId s : set) {
    const VertexId r = find(s);
    if (r != target) mergeVertices(target, r);
  }
}

EdgeWeight ContractableGraph::deleteEdge(VertexId u, VertexId v) {
  const EdgeWeight w = (isAlive(u) && isAlive(v)) ? edgeWeight(u, v) : 0;
  if (w == 0) {
    throw NotFound("no live edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  adjacency_[u].erase(v);
  adjacency_[v].erase(u);
  weighted_degree_[u] -= w;
  weighted_degree_[v] -= w;
  --edge_count_;
  return w;
}

std::vector<VertexId> ContractableGraph::compact() {
  std::vector<VertexId> remap(slotCount(), kInvalidVertex);
  VertexId next = 0;
  for (VertexId v = 0; v < slotCount(); ++v) {
    if (alive_[v]) remap[v] = next++;
  }

  auto base = std::make_shared<std::vector<VertexId>>(original_count_);
  for (VertexId o = 0; o < original_count_; ++o) (*base)[o] = remap[currentVertex(o)];

  std::vector<Neighborhood> adjacency(next);
  std::vector<EdgeWeight> degree(next);
  for (VertexId v = 0; v < slotCount(); ++v) {
    if (!alive_[v]) continue;
    auto& nb = adjacency[remap[v]];
    nb.reserve(adjacency_[v].size());
    for (const auto& [x, w] : adjacency_[v]) nb.emplace(remap[x], w);
    degree[remap[v]] = weighted_degree_[v];
  }
  adjacency_ = std::move(adjacency);
  weighted_degree_ = std::move(degree);
  alive_.assign(next, 1);
  parent_.resize(next);
  for (VertexId v = 0; v < next; ++v) parent_[v] = v;
  base_ = std::move(base);
  return remap;
}

bool ContractableGraph::checkInvariants() const {
  std::size_t arcs = 0;
  VertexId live = 0;
  for (VertexId u = 0; u < slotCount(); ++u) {
    if (!alive_[u]) {
      if (!adjacency_[u].empty() || weighted_degree_[u] != 0) return false;
      continue;
    }
    ++live;
    if (find(u) != u) return false;
    EdgeWeight sum = 0;
    for (const auto& [v, w] : adjacency_[u]) {
      if (v == u || w <= 0 || !isAlive(v)) return false;
      if (edgeWeight(v, u) != w) return false;
      sum += w;
      ++arcs;
    }
    if (sum != weighted_degree_[u]) return false;
  }
  if (live != live_count_ || arcs != 2 * edge_count_) return false;
  for (VertexId o = 0; o < original_count_; ++o) {
    if (!isAlive(currentVertex(o))) return false;
  }
  return true;
}

}  // namespace mtcut
