#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "mtcut/static_graph.hpp"
#include "mtcut/types.hpp"

namespace mtcut::ls {

/// Per-vertex connection weights to every block, kept up to date under moves.
/// Memory is n * k weights.
class GainTable {
 public:
  GainTable(const StaticGraph& g, const Assignment& a, int k);

  int blocks() const { return k_; }
  BlockId block(VertexId v) const { return block_[v]; }
  const Assignment& assignment() const { return block_; }
  EdgeWeight connection(VertexId v, BlockId b) const { return conn_[index(v, b)]; }
  EdgeWeight cut() const { return cut_; }

  struct Gain {
    BlockId block = kNoBlock;  // best other block, lowest id on ties
    EdgeWeight value = 0;      // w(v, block) - w(v, own block)
  };
  /// Best move of v. Undefined block for k < 2.
  Gain gain(VertexId v) const;
  bool isBoundary(VertexId v) const { return connection(v, block_[v]) != g_->weightedDegree(v); }

  void move(VertexId v, BlockId to);

  /// Recomputes everything from scratch and compares. Used by tests.
  bool consistent() const;

 private:
  std::size_t index(VertexId v, BlockId b) const { return static_cast<std::size_t>(v) * k_ + b; }

  const StaticGraph* g_;
  int k_;
  Assignment block_;
  std::vector<EdgeWeight> conn_;
  EdgeWeight cut_ = 0;
};

/// Vertices marked in `fixed` never move; every terminal must be marked.
/// One sweep of single moves with non-negative gain (each vertex at most
/// once), then pair moves of same-block neighbors sharing a best block with
/// g(u) + g(v) + 2 w(u, v) > 0. Returns whether the cut strictly decreased.
bool klPass(const StaticGraph& g, Assignment& a, int k, std::span<const char> fixed);

/// Minimum cut between blocks i and j on the subgraph they induce, with the
/// fixed vertices of each block held in place. Relabels the two blocks only
/// when the cut between them strictly decreases; returns whether it did.
bool pairwiseFlowRefine(const StaticGraph& g, Assignment& a, BlockId i, BlockId j, std::span<const char> fixed);

struct RefineOptions {
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
};

/// KL sweeps until no improvement, pairwise flows in seeded random order until
/// no pair changed since its last flow, then KL sweeps again.
Assignment refine(const StaticGraph& g, Assignment a, int k, std::span<const char> fixed,
                  const RefineOptions& options = {});

/// Mask marking the terminal vertices.
std::vector<char> terminalMask(VertexId n, std::span<const VertexId> terminals);

}  // namespace mtcut::ls
