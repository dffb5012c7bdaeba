#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "mtcut/bound_state.hpp"
#include "mtcut/config.hpp"
#include "mtcut/problem.hpp"

namespace mtcut::reduce {

struct RuleOutcome {
  std::size_t contracted = 0;  // vertices removed by contraction
  std::size_t deleted = 0;     // edges deleted into the cut

  bool any() const { return contracted != 0 || deleted != 0; }
  RuleOutcome& operator+=(const RuleOutcome& o) {
    contracted += o.contracted;
    deleted += o.deleted;
    return *this;
  }
};

struct ReductionReport {
  std::array<RuleOutcome, kReductionRuleCount> per_rule{};
  std::size_t passes = 0;
  VertexId vertices_before = 0;
  VertexId vertices_after = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  bool fixpoint = false;
  bool solved = false;
  bool pruned = false;  // lower bound reached the incumbent
  bool timed_out = false;

  std::size_t totalContracted() const;
  std::size_t totalDeleted() const;
};

/// Receives candidate kernel labelings discovered during reduction.
using SolutionCallback = std::function<void(const Problem&, const KernelLabels&)>;

struct ReductionContext {
  BoundState* bound = nullptr;  // null: no incumbent, connectivity rule inactive
  SolutionCallback on_solution;
  int threads = 1;
  std::size_t equal_neighborhood_limit = 5;
  std::size_t flow_vertices_per_kind = 5;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();

  EdgeWeight bestValue() const { return bound != nullptr ? bound->bestValue() : kInfiniteWeight; }
  bool expired() const { return std::chrono::steady_clock::now() >= deadline; }
};

ReductionContext contextFromConfig(const SolverConfig& config, BoundState* bound);

/// Every edge whose endpoints are both terminals is cut.
RuleOutcome deleteInterTerminalEdges(Problem& p);

/// Contracts each terminal's largest minimum isolating cut into the terminal
/// (sides overlapping an earlier applied side are skipped), raises the lower
/// bound, and reports the isolating-cut upper-bound labeling.
RuleOutcome contractIsolatingCuts(Problem& p, const ReductionContext& ctx);

/// Non-terminal vertices of degree one join their neighbor; of degree two,
/// their heavier neighbor (ties: lower id). Repeats until none is left.
RuleOutcome reduceLowDegree(Problem& p);

/// Contracts (v, u) when v is a non-terminal with 2 w(v, u) >= w(E[v]).
RuleOutcome reduceHeavyEdge(Problem& p);

/// Contracts (v1, v2), both non-terminal, when a common neighbor v3 gives
/// w(e) + 2 w(v1, v3) >= w(E[v1]) and w(e) + 2 w(v2, v3) >= w(E[v2]).
RuleOutcome reduceHeavyTriangle(Problem& p);

struct EdgeConnectivity {
  VertexId u;
  VertexId v;
  EdgeWeight bound;  // lower bound on the local connectivity of u and v
};

/// Nagamochi-Ibaraki scan: one entry per live edge with bound <= lambda(u, v).
std::vector<EdgeConnectivity> capforest(const ContractableGraph& g);

/// Contracts edges with connectivity bound >= best_value - deletedWeight();
/// separating their endpoints cannot beat the incumbent. No-op without one.
RuleOutcome reduceConnectivity(Problem& p, EdgeWeight best_value);

/// Articulation points of the live graph, sorted by slot.
std::vector<VertexId> articulationPoints(const ContractableGraph& g);

/// Contracts every terminal-free component hanging off an articulation point
/// into that articulation point.
RuleOutcome reduceArticulationPoints(Problem& p);

/// Unordered pairs (a < b) of non-terminals with at most `limit` neighbors and
/// identical weighted neighborhoods (excluding each other).
std::vector<std::pair<VertexId, VertexId>> equalNeighborhoodPairs(const Problem& p, std::size_t limit);

RuleOutcome reduceEqualNeighborhoods(Problem& p, std::size_t limit);

/// Sources of the non-terminal flow rule: high weighted degree first, then
/// high hop distance from every terminal; deduplicated.
std::vector<VertexId> nonTerminalFlowSources(const Problem& p, std::size_t per_kind);

/// Contracts the largest isolating source side of each selected non-terminal.
RuleOutcome reduceNonTerminalFlows(Problem& p, const ReductionContext& ctx);

RuleOutcome applyRule(ReductionRule rule, Problem& p, const ReductionContext& ctx);

/// Applies `order` repeatedly until a pass changes nothing, the kernel is
/// solved, the lower bound reaches the incumbent, or the deadline passes.
/// An empty order only retires isolated terminals and checks for a solution.
ReductionReport runReductionLoop(Problem& p, const ReductionContext& ctx, std::span<const ReductionRule> order);
/// Same with defaultReductionOrder().
ReductionReport runReductionLoop(Problem& p, const ReductionContext& ctx);

}  // namespace mtcut::reduce
