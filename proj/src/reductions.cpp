#include "mtcut/reductions.hpp"

#include <algorithm>
#include <deque>

namespace mtcut::reduce {

std::size_t ReductionReport::totalContracted() const {
  std::size_t total = 0;
  for (const auto& r : per_rule) total += r.contracted;
  return total;
}

std::size_t ReductionReport::totalDeleted() const {
  std::size_t total = 0;
  for (const auto& r : per_rule) total += r.deleted;
  return total;
}

ReductionContext contextFromConfig(const SolverConfig& config, BoundState* bound) {
  ReductionContext ctx;
  ctx.bound = bound;
  ctx.threads = config.threads;
  ctx.equal_neighborhood_limit = config.equal_neighborhood_limit;
  ctx.flow_vertices_per_kind = config.flow_vertices_per_kind;
  return ctx;
}

RuleOutcome deleteInterTerminalEdges(Problem& p) {
  RuleOutcome out;
  std::vector<std::pair<VertexId, VertexId>> doomed;
  for (const auto& t : p.terminals()) {
    for (const auto& [x, w] : p.graph().neighbors(t.vertex)) {
      if (t.vertex < x && p.isTerminal(x)) doomed.emplace_back(t.vertex, x);
    }
  }
  for (const auto& [u, v] : doomed) {
    p.deleteEdge(u, v);
    ++out.deleted;
  }
  return out;
}

RuleOutcome reduceLowDegree(Problem& p) {
  RuleOutcome out;
  const auto& g = p.graph();
  std::deque<VertexId> work;
  std::vector<char> queued(g.slotCount(), 0);
  auto consider = [&](VertexId v) {
    if (g.isAlive(v) && !queued[v] && !p.isTerminal(v) && (g.degree(v) == 1 || g.degree(v) == 2)) {
      queued[v] = 1;
      work.push_back(v);
    }
  };
  for (VertexId v = 0; v < g.slotCount(); ++v) consider(v);

  while (!work.empty()) {
    const VertexId v = work.front();
    work.pop_front();
    queued[v] = 0;
    if (!g.isAlive(v) || p.isTerminal(v)) continue;
    const std::size_t deg = g.degree(v);
    if (deg != 1 && deg != 2) continue;
    VertexId target = kInvalidVertex;
    EdgeWeight heaviest = 0;
    for (const auto& [x, w] : g.neighbors(v)) {
      if (w > heaviest || (w == heaviest && x < target)) {
        heaviest = w;
        target = x;
      }
    }
    p.contractEdge(target, v);
    ++out.contracted;
    consider(target);
    for (const auto& [x, w] : g.neighbors(target)) consider(x);
  }
  return out;
}

RuleOutcome reduceHeavyEdge(Problem& p) {
  RuleOutcome out;
  const auto& g = p.graph();
  for (VertexId v = 0; v < g.slotCount(); ++v) {
    if (!g.isAlive(v) || p.isTerminal(v) || g.degree(v) == 0) continue;
    VertexId target = kInvalidVertex;
    EdgeWeight heaviest = 0;
    for (const auto& [x, w] : g.neighbors(v)) {
      if (w > heaviest || (w == heaviest && x < target)) {
        heaviest = w;
        target = x;
      }
    }
    if (2 * heaviest >= g.weightedDegree(v)) {
      p.contractEdge(target, v);
      ++out.contracted;
    }
  }
  return out;
}

RuleOutcome reduceHeavyTriangle(Problem& p) {
  RuleOutcome out;
  const auto& g = p.graph();
  std::vector<std::pair<VertexId, EdgeWeight>> around;
  for (VertexId v1 = 0; v1 < g.slotCount(); ++v1) {
    if (!g.isAlive(v1) || p.isTerminal(v1) || g.degree(v1) < 2) continue;
    around.assign(g.neighbors(v1).begin(), g.neighbors(v1).end());
    std::sort(around.begin(), around.end());
    const EdgeWeight deg1 = g.weightedDegree(v1);
    for (const auto& [v2, w12] : around) {
      if (v2 < v1 || p.isTerminal(v2)) continue;
      const EdgeWeight deg2 = g.weightedDegree(v2);
      const auto& n1 = g.neighbors(v1);
      const auto& n2 = g.neighbors(v2);
      const auto& smaller = n1.size() <= n2.size() ? n1 : n2;
      bool heavy = false;
      for (const auto& [v3, unused] : smaller) {
        if (v3 == v1 || v3 == v2) continue;
        const EdgeWeight w13 = g.edgeWeight(v1, v3);
        const EdgeWeight w23 = g.edgeWeight(v2, v3);
        if (w13 == 0 || w23 == 0) continue;
        if (w12 + 2 * w13 >= deg1 && w12 + 2 * w23 >= deg2) {
          heavy = true;
          break;
        }
      }
      if (heavy) {
        p.contractEdge(v1, v2);
        ++out.contracted;
        break;  // v1's neighborhood changed; revisit it next pass
      }
    }
  }
  return out;
}

RuleOutcome reduceConnectivity(Problem& p, EdgeWeight best_value) {
  RuleOutcome out;
  if (best_value == kInfiniteWeight) return out;
  const EdgeWeight threshold = best_value - p.deletedWeight();
  if (threshold <= 0) return out;
  const auto bounds = capforest(p.graph());
  const auto& g = p.graph();
  for (const auto& e : bounds) {
    if (e.bound < threshold) continue;
    const VertexId u = g.representative(e.u);
    const VertexId v = g.representative(e.v);
    if (u == v || (p.isTerminal(u) && p.isTerminal(v))) continue;
    if (p.isTerminal(v)) {
      p.contractVertexSet(std::span<const VertexId>(&u, 1), v);
    } else {
      p.contractVertexSet(std::span<const VertexId>(&v, 1), u);
    }
    ++out.contracted;
  }
  return out;
}

RuleOutcome applyRule(ReductionRule rule, Problem& p, const ReductionContext& ctx) {
  switch (rule) {
    case ReductionRule::kInterTerminalEdges:
      return deleteInterTerminalEdges(p);
    case ReductionRule::kIsolatingCuts:
      return contractIsolatingCuts(p, ctx);
    case ReductionRule::kLowDegree:
      return reduceLowDegree(p);
    case ReductionRule::kHeavyEdge:
      return reduceHeavyEdge(p);
    case ReductionRule::kHeavyTriangle:
      return reduceHeavyTriangle(p);
    case ReductionRule::kConnectivity:
      return reduceConnectivity(p, ctx.bestValue());
    case ReductionRule::kArticulationPoints:
      return reduceArticulationPoints(p);
    case ReductionRule::kEqualNeighborhoods:
      return reduceEqualNeighborhoods(p, ctx.equal_neighborhood_limit);
    case ReductionRule::kNonTerminalFlows:
      return reduceNonTerminalFlows(p, ctx);
  }
  return {};
}

ReductionReport runReductionLoop(Problem& p, const ReductionContext& ctx) {
  const auto order = defaultReductionOrder();
  return runReductionLoop(p, ctx, order);
}

ReductionReport runReductionLoop(Problem& p, const ReductionContext& ctx, std::span<const ReductionRule> order) {
  ReductionReport report;
  report.vertices_before = p.graph().numVertices();
  report.edges_before = p.graph().numEdges();
  auto finish = [&] {
    report.vertices_after = p.graph().numVertices();
    report.edges_after = p.graph().numEdges();
    return report;
  };
  auto bounded_out = [&] { return p.lowerBound() >= ctx.bestValue(); };

  p.retireIsolatedTerminals();
  if (p.isSolved()) {
    report.solved = report.fixpoint = true;
    return finish();
  }
  while (true) {
    ++report.passes;
    bool changed = false;
    for (const ReductionRule rule : order) {
      if (ctx.expired()) {
        report.timed_out = true;
        return finish();
      }
      const RuleOutcome outcome = applyRule(rule, p, ctx);
      report.per_rule[static_cast<std::size_t>(rule)] += outcome;
      changed |= outcome.any();
      p.retireIsolatedTerminals();
      if (p.terminals().size() <= 1) {
        report.solved = true;
        return finish();
      }
      if (bounded_out()) {
        report.pruned = true;
        return finish();
      }
    }
    if (p.isSolved()) {
      report.solved = true;
      return finish();
    }
    if (!changed) break;
  }
  report.fixpoint = true;
  return finish();
}

}  // namespace mtcut::reduce
