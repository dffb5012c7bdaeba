#include "mtcut/config.hpp"

#include <array>
#include <cstdlib>
#include <string_view>

#include "mtcut/types.hpp"

namespace mtcut {

namespace {

constexpr std::array<std::pair<ReductionRule, std::string_view>, kReductionRuleCount> kRuleNames{{
    {ReductionRule::kInterTerminalEdges, "inter-terminal-edges"},
    {ReductionRule::kIsolatingCuts, "isolating-cuts"},
    {ReductionRule::kLowDegree, "low-degree"},
    {ReductionRule::kHeavyEdge, "heavy-edge"},
    {ReductionRule::kHeavyTriangle, "heavy-triangle"},
    {ReductionRule::kConnectivity, "connectivity"},
    {ReductionRule::kArticulationPoints, "articulation-points"},
    {ReductionRule::kEqualNeighborhoods, "equal-neighborhoods"},
    {ReductionRule::kNonTerminalFlows, "non-terminal-flows"},
}};

}  // namespace

const char* reductionRuleName(ReductionRule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name.data();
  }
  return "unknown";
}

ReductionRule reductionRuleFromName(const std::string& name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  throw InvalidInput("unknown reduction rule '" + name + "'");
}

std::vector<ReductionRule> defaultReductionOrder() {
  std::vector<ReductionRule> order;
  for (const auto& [r, name] : kRuleNames) order.push_back(r);
  return order;
}

SolverConfig defaultSolverConfig() {
  SolverConfig config;
  if (const char* cmd = std::getenv("MTCUT_MILP_SOLVER"); cmd != nullptr) config.ilp.command = cmd;
  return config;
}

}  // namespace mtcut
