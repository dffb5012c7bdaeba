#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mtcut {

enum class SolveMode { kExact, kInexact };
enum class BranchRule { kVertex, kEdge };

enum class ReductionRule {
  kInterTerminalEdges,
  kIsolatingCuts,
  kLowDegree,
  kHeavyEdge,
  kHeavyTriangle,
  kConnectivity,
  kArticulationPoints,
  kEqualNeighborhoods,
  kNonTerminalFlows,
};

inline constexpr std::size_t kReductionRuleCount = 9;

const char* reductionRuleName(ReductionRule rule);
/// Throws InvalidInput on unknown names.
ReductionRule reductionRuleFromName(const std::string& name);

/// Default order: cheap local rules first, flow-based rules last.
std::vector<ReductionRule> defaultReductionOrder();

struct IlpOptions {
  /// Shell command template; {lp}, {sol} and {timeout} are substituted.
  /// Empty disables the ILP path. Defaults to $MTCUT_MILP_SOLVER.
  std::string command;
  std::string work_dir;  // empty: system temp directory
};

struct SolverConfig {
  SolveMode mode = SolveMode::kExact;
  BranchRule branch_rule = BranchRule::kVertex;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  int threads = 1;
  std::size_t ilp_edge_limit = 50000;
  double ilp_timeout_seconds = 60.0;
  double delta = 0.1;  // inexact: fraction of low-degree terminals isolated per branch
  int beta = 5;        // inexact: maximum terminal-contraction children per branch
  std::uint64_t seed = 0;

  std::size_t equal_neighborhood_limit = 5;  // c_N
  std::size_t flow_vertices_per_kind = 5;    // high-degree and high-distance sources
  std::vector<ReductionRule> reductions = defaultReductionOrder();
  bool local_search = true;
  /// Soft cap on queued problems; 0 means unlimited. Exceeding it drops
  /// children and clears the optimality flag.
  std::size_t max_queued_problems = 0;
  IlpOptions ilp;
};

/// SolverConfig with the ILP command read from the environment.
SolverConfig defaultSolverConfig();

}  // namespace mtcut
