#pragma once

#include <span>
#include <vector>

#include "mtcut/contractable_graph.hpp"
#include "mtcut/types.hpp"

namespace mtcut {

struct Terminal {
  VertexId vertex;  // current live slot
  BlockId index;    // original terminal index, also the block label

  friend bool operator==(const Terminal&, const Terminal&) = default;
};

/// Kernel-level labeling: one block per slot of Problem::graph (dead slots ignored).
using KernelLabels = std::vector<BlockId>;

/// A subproblem of the branch tree.
///
/// Terminal-aware wrapper around ContractableGraph: contractions keep terminal
/// status on the surviving slot and refuse to merge two terminals. Terminals
/// that become isolated are moved to the retired list; they keep their own
/// label in any projected solution.
class Problem {
 public:
  Problem() = default;
  /// Throws InvalidInput for fewer than two terminals, duplicates or bad ids.
  Problem(ContractableGraph graph, std::span<const VertexId> terminal_vertices);

  const ContractableGraph& graph() const { return graph_; }
  ContractableGraph& mutableGraph() { return graph_; }

  /// Active (non-isolated) terminals.
  const std::vector<Terminal>& terminals() const { return terminals_; }
  const std::vector<Terminal>& retiredTerminals() const { return retired_; }
  std::size_t originalTerminalCount() const { return terminals_.size() + retired_.size(); }

  /// Original terminal index of slot v, or kNoBlock.
  BlockId terminalIndex(VertexId v) const { return terminal_of_slot_[v]; }
  bool isTerminal(VertexId v) const { return terminal_of_slot_[v] != kNoBlock; }

  EdgeWeight deletedWeight() const { return deleted_weight_; }
  EdgeWeight lowerBound() const { return lower_bound_; }
  void raiseLowerBound(EdgeWeight lb) {
    if (lb > lower_bound_) lower_bound_ = lb;
  }

  /// Merges v into u. Throws InvalidOperation when both are terminals and
  /// NotFound when the edge is missing.
  void contractEdge(VertexId u, VertexId v);
  /// Merges all of `set` into `into`. Throws InvalidOperation if the merged set
  /// would contain two terminals.
  void contractVertexSet(std::span<const VertexId> set, VertexId into);
  /// Deletes the edge and charges its weight to deletedWeight().
  EdgeWeight deleteEdge(VertexId u, VertexId v);

  /// Moves isolated terminals to the retired list. Returns how many moved.
  std::size_t retireIsolatedTerminals();

  /// True when every connected component holds at most one active terminal;
  /// then the kernel is solved with value deletedWeight().
  bool isSolved() const;
  /// Labels for a solved problem: each component goes to its terminal,
  /// terminal-free components to the first active (or retired) terminal.
  KernelLabels trivialLabels() const;

  /// Renumbers the graph and updates terminal slots.
  void compact();

 private:
  ContractableGraph graph_;
  std::vector<Terminal> terminals_;
  std::vector<Terminal> retired_;
  std::vector<BlockId> terminal_of_slot_;
  EdgeWeight deleted_weight_ = 0;
  EdgeWeight lower_bound_ = 0;
};

/// Maps a kernel labeling back to the original vertices. Throws
/// IncompleteSolution if a live vertex is unlabeled and InfeasibleAssignment if
/// a terminal carries a foreign label.
Assignment projectSolution(const Problem& p, std::span<const BlockId> kernel_labels);

/// Per original vertex: the terminal index whose kernel vertex contains it, or
/// kNoBlock. These vertices are anchored to that terminal in the problem graph.
std::vector<BlockId> terminalAnchors(const Problem& p);

/// Cut value of a kernel labeling on the kernel graph (without deleted weight).
EdgeWeight kernelCutValue(const Problem& p, std::span<const BlockId> kernel_labels);

}  // namespace mtcut
