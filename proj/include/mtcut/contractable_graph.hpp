#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "mtcut/static_graph.hpp"
#include "mtcut/types.hpp"

namespace mtcut {

/// Weighted undirected graph supporting edge contraction and deletion.
///
/// Vertices are addressed by slot ids that stay stable across contractions:
/// contracting (u, v) keeps slot u alive and tombstones slot v. A union-find
/// over slots, combined with a shared base map that is rewritten on compact(),
/// maps every original vertex to its current live representative.
///
/// Not thread-safe: representative lookups compress paths. Each instance has a
/// single owner; copies are independent apart from the shared immutable base
/// map.
class ContractableGraph {
 public:
  using Neighborhood = std::unordered_map<VertexId, EdgeWeight>;

  ContractableGraph() = default;
  explicit ContractableGraph(const StaticGraph& g);

  /// Throws InvalidInput on self-loops, bad endpoints or non-positive weights.
  static ContractableGraph fromEdgeList(VertexId n, std::span<const WeightedEdge> edges);

  VertexId slotCount() const { return static_cast<VertexId>(adjacency_.size()); }
  VertexId numVertices() const { return live_count_; }
  std::size_t numEdges() const { return edge_count_; }
  VertexId originalCount() const { return original_count_; }

  bool isAlive(VertexId v) const { return v < slotCount() && alive_[v]; }
  const Neighborhood& neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  EdgeWeight weightedDegree(VertexId v) const { return weighted_degree_[v]; }
  /// Zero when the edge does not exist.
  EdgeWeight edgeWeight(VertexId u, VertexId v) const;
  bool hasEdge(VertexId u, VertexId v) const { return edgeWeight(u, v) > 0; }

  /// Live slot ids in increasing order.
  std::vector<VertexId> liveVertices() const;
  /// Each live edge once with u < v, sorted.
  std::vector<WeightedEdge> edges() const;

  /// Live slot that currently contains slot s.
  VertexId representative(VertexId s) const;
  /// Live slot that currently contains original vertex v.
  VertexId currentVertex(VertexId original) const;

  /// Merges v into u. Parallel edges are coalesced and the (u, v) edge vanishes.
  /// Throws NotFound if (u, v) is not a live edge.
  void contractEdge(VertexId u, VertexId v);
  /// Merges v into u without requiring an edge between them.
  void mergeVertices(VertexId u, VertexId v);
  /// Merges every live slot of `set` into `into`.
  void contractVertexSet(std::span<const VertexId> set, VertexId into);
  /// Removes (u, v) and returns its weight. Throws NotFound if absent.
  EdgeWeight deleteEdge(VertexId u, VertexId v);

  /// Renumbers live vertices to 0..numVertices()-1 in increasing slot order.
  /// Returns old slot -> new slot, kInvalidVertex for dead slots.
  std::vector<VertexId> compact();

  /// Full recount of all structural invariants. Used by tests.
  bool checkInvariants() const;

 private:
  VertexId find(VertexId s) const;

  std::vector<Neighborhood> adjacency_;
  std::vector<EdgeWeight> weighted_degree_;
  std::vector<char> alive_;
  mutable std::vector<VertexId> parent_;
  std::shared_ptr<const std::vector<VertexId>> base_;  // original -> slot; null means identity
  VertexId original_count_ = 0;
  VertexId live_count_ = 0;
  std::size_t edge_count_ = 0;
};

}  // namespace mtcut
