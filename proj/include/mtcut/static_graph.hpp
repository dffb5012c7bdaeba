#pragma once

#include <span>
#include <vector>

#include "mtcut/types.hpp"

namespace mtcut {

/// Immutable weighted undirected graph in compressed adjacency form.
///
/// Used for the original instance: cut evaluation, local search and file I/O
/// operate on it, while the branch-and-reduce engine works on copies of a
/// ContractableGraph built from it.
class StaticGraph {
 public:
  struct Arc {
    VertexId target;
    EdgeWeight weight;
  };

  StaticGraph() = default;

  /// Duplicate (u, v) pairs are merged by summing weights. Throws InvalidInput
  /// on self-loops, out-of-range endpoints or non-positive weights.
  static StaticGraph fromEdgeList(VertexId n, std::span<const WeightedEdge> edges);

  VertexId numVertices() const { return static_cast<VertexId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  std::size_t numEdges() const { return arcs_.size() / 2; }

  std::span<const Arc> neighbors(VertexId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  EdgeWeight weightedDegree(VertexId v) const { return weighted_degree_[v]; }
  EdgeWeight totalWeight() const { return total_weight_; }

  /// Each undirected edge once, with u < v, sorted.
  std::vector<WeightedEdge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<EdgeWeight> weighted_degree_;
  EdgeWeight total_weight_ = 0;
};

/// Sum of weights of edges whose endpoints carry different labels. Throws
/// InfeasibleAssignment if the size is wrong, a label is unset, or a terminal
/// does not carry its own index (terminal i must have label i).
EdgeWeight cutValue(const StaticGraph& g, const Assignment& a, std::span<const VertexId> terminals);

/// Same, without any feasibility checks beyond the size.
EdgeWeight cutValueUnchecked(const StaticGraph& g, const Assignment& a);

/// Connected component id per vertex; returns the number of components.
VertexId connectedComponents(const StaticGraph& g, std::vector<VertexId>& component);

}  // namespace mtcut
