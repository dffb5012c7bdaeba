#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mtcut/bound_state.hpp"
#include "mtcut/config.hpp"
#include "mtcut/problem.hpp"
#include "mtcut/reductions.hpp"
#include "mtcut/static_graph.hpp"

namespace mtcut {

struct SolverStats {
  VertexId input_vertices = 0;  // of the root problem before reduction
  std::size_t input_edges = 0;
  VertexId kernel_vertices = 0;  // root problem after the first reduction loop
  std::size_t kernel_edges = 0;
  VertexId peak_kernel_vertices = 0;
  EdgeWeight root_lower_bound = 0;
  reduce::ReductionReport root_report;
  std::size_t problems = 0;  // popped from the queue
  std::size_t branches = 0;
  std::size_t pruned = 0;
  std::size_t ilp_calls = 0;
  std::size_t ilp_solved = 0;
  std::size_t ilp_timeouts = 0;
  std::size_t refinements = 0;
  bool timed_out = false;
  double seconds = 0;
};

struct SolveResult {
  Assignment assignment;
  EdgeWeight value = kInfiniteWeight;
  bool optimal = false;  // exact mode and the search finished within all limits
  std::vector<ProgressEvent> events;
  SolverStats stats;
};

/// Highest weighted-degree non-terminal adjacent to an active terminal, lowest
/// slot on ties. Throws InvalidOperation when there is none; a reduced,
/// unsolved problem always has one.
VertexId selectBranchVertex(const Problem& p);

struct BranchOptions {
  bool inexact = false;
  int beta = 5;  // inexact: at most this many terminal-contraction children
};

/// Children of branching on x's block. A terminal t_j is tried only if
/// w(x, t_j) + w(x, V \ T) > w_M; the "other block" child only if
/// w(x, V \ T) > w_M and some active terminal is not adjacent to x. If every
/// candidate is excluded the heaviest contraction is kept. Children whose
/// lower bound reaches `best` are dropped.
std::vector<Problem> branchVertex(const Problem& p, VertexId x, EdgeWeight best, const BranchOptions& options = {});

/// Contract-or-delete branching on the heaviest terminal edge of the branch
/// vertex.
std::vector<Problem> branchEdgeFallback(const Problem& p, EdgeWeight best);

/// Isolates the ceil(delta |T|) active terminals of lowest weighted degree,
/// then contracts into the highest-degree terminal every vertex adjacent to it
/// and to no other terminal. delta <= 0 leaves p unchanged.
void shrinkTerminalsInexact(Problem& p, double delta);

/// Solves the instance (g, terminals); terminal i receives label i.
/// Disconnected inputs are solved per component.
SolveResult solve(const StaticGraph& g, std::span<const VertexId> terminals, const SolverConfig& config);

/// Solves a prepared root problem over `original` (for example with terminal
/// blocks already contracted). `terminals` are the original terminal vertices.
using ImprovementHook = std::function<void(EdgeWeight, const Assignment&)>;
SolveResult solveProblem(const StaticGraph& original, std::span<const VertexId> terminals, Problem root,
                         const SolverConfig& config, const ImprovementHook& on_improve = {});

/// "time_seconds,best_value" rows with a header.
std::string eventsCsv(std::span<const ProgressEvent> events);

}  // namespace mtcut
