#pragma once

#include <span>
#include <vector>

#include "mtcut/contractable_graph.hpp"
#include "mtcut/types.hpp"

namespace mtcut::flow {

/// Static symmetric flow network with paired arcs; an undirected edge of
/// weight w becomes two arcs of capacity w that are each other's reverse.
/// Vertices use dense local ids; fromGraph() keeps the slot <-> local mapping.
class FlowGraph {
 public:
  struct Arc {
    VertexId head;
    std::uint32_t reverse;  // index of the paired arc
    EdgeWeight capacity;
  };

  static FlowGraph fromEdges(VertexId n, std::span<const WeightedEdge> edges);
  static FlowGraph fromGraph(const ContractableGraph& g);

  VertexId numVertices() const { return static_cast<VertexId>(offsets_.size() - 1); }
  std::size_t numArcs() const { return arcs_.size(); }
  std::uint32_t firstArc(VertexId v) const { return offsets_[v]; }
  std::uint32_t endArc(VertexId v) const { return offsets_[v + 1]; }
  const Arc& arc(std::uint32_t a) const { return arcs_[a]; }

  /// Only meaningful for networks built with fromGraph().
  VertexId localOf(VertexId slot) const { return local_of_slot_[slot]; }
  VertexId slotOf(VertexId local) const { return slot_of_local_.empty() ? local : slot_of_local_[local]; }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<VertexId> local_of_slot_;
  std::vector<VertexId> slot_of_local_;
};

/// Minimum s-T cut. `source_side` is the largest source side among all
/// minimum cuts, restricted to the connected component of s.
struct FlowResult {
  EdgeWeight value = 0;
  std::vector<VertexId> source_side;
};

/// Blocking-flow maximum flow from s to the sink set, all ids local to `net`.
/// Sinks act as if joined to a super-sink by infinite arcs.
FlowResult maxFlow(const FlowGraph& net, VertexId s, std::span<const VertexId> sinks);

/// Same on a contractable graph; ids are slots. Throws InvalidInput if s is a
/// sink or the sink set is empty.
FlowResult maxFlowST(const ContractableGraph& g, VertexId s, std::span<const VertexId> sinks);
FlowResult maxFlowST(const FlowGraph& net, VertexId s, std::span<const VertexId> sinks);

/// result[i] is the minimum isolating cut of terminals[i] against the others.
/// The flows are independent and run on up to `threads` threads.
std::vector<FlowResult> isolatingCuts(const ContractableGraph& g, std::span<const VertexId> terminals,
                                      int threads = 1);

struct IsolatingBounds {
  EdgeWeight lower = 0;  // ceil(sum / 2)
  EdgeWeight upper = 0;  // sum - max
};

IsolatingBounds isolatingBounds(std::span<const FlowResult> results);

}  // namespace mtcut::flow
