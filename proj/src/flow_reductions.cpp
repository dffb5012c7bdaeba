#include <algorithm>
#include <limits>

#include "mtcut/maxflow.hpp"
#include "mtcut/parallel.hpp"
#include "mtcut/reductions.hpp"

namespace mtcut::reduce {

RuleOutcome contractIsolatingCuts(Problem& p, const ReductionContext& ctx) {
  RuleOutcome out;
  const auto& terminals = p.terminals();
  if (terminals.size() < 2) return out;
  std::vector<VertexId> vertices;
  vertices.reserve(terminals.size());
  for (const auto& t : terminals) vertices.push_back(t.vertex);

  const auto results = flow::isolatingCuts(p.graph(), vertices, ctx.threads);
  const auto bounds = flow::isolatingBounds(results);
  p.raiseLowerBound(p.deletedWeight() + bounds.lower);

  if (ctx.on_solution) {
    // Everything goes to the terminal with the heaviest isolating cut except
    // the other source sides; every cut edge lies on one of those sides.
    std::size_t heaviest = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
      if (results[i].value > results[heaviest].value) heaviest = i;
    }
    KernelLabels labels(p.graph().slotCount(), terminals[heaviest].index);
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (i == heaviest) continue;
      for (const VertexId v : results[i].source_side) labels[v] = terminals[i].index;
    }
    for (const auto& t : p.retiredTerminals()) labels[t.vertex] = t.index;
    ctx.on_solution(p, labels);
  }

  std::vector<char> taken(p.graph().slotCount(), 0);
  std::vector<VertexId> claimed;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& side = results[i].source_side;
    if (side.size() <= 1) continue;
    if (std::any_of(side.begin(), side.end(), [&](VertexId v) { return taken[v] != 0; })) continue;
    for (const VertexId v : side) taken[v] = 1;
    p.contractVertexSet(side, vertices[i]);
    out.contracted += side.size() - 1;
  }
  return out;
}

std::vector<VertexId> nonTerminalFlowSources(const Problem& p, std::size_t per_kind) {
  const auto& g = p.graph();
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.slotCount(); ++v) {
    if (g.isAlive(v) && !p.isTerminal(v) && g.degree(v) > 0) pool.push_back(v);
  }
  std::vector<VertexId> out;
  if (pool.empty() || per_kind == 0) return out;

  std::vector<VertexId> by_degree = pool;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](VertexId a, VertexId b) { return g.weightedDegree(a) > g.weightedDegree(b); });
  by_degree.resize(std::min(per_kind, by_degree.size()));
  out = by_degree;

  // Hop distance from the nearest terminal; unreachable counts as farthest.
  constexpr VertexId kFar = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> dist(g.slotCount(), kFar);
  std::vector<VertexId> queue;
  for (const auto& t : p.terminals()) {
    dist[t.vertex] = 0;
    queue.push_back(t.vertex);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId x = queue[head];
    for (const auto& [y, w] : g.neighbors(x)) {
      if (dist[y] == kFar) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  std::stable_sort(pool.begin(), pool.end(), [&](VertexId a, VertexId b) { return dist[a] > dist[b]; });
  std::size_t added = 0;
  for (const VertexId v : pool) {
    if (added == per_kind) break;
    if (std::find(by_degree.begin(), by_degree.end(), v) != by_degree.end()) continue;
    out.push_back(v);
    ++added;
  }
  return out;
}

RuleOutcome reduceNonTerminalFlows(Problem& p, const ReductionContext& ctx) {
  RuleOutcome out;
  const auto sources = nonTerminalFlowSources(p, ctx.flow_vertices_per_kind);
  if (sources.empty() || p.terminals().empty()) return out;
  std::vector<VertexId> sinks;
  for (const auto& t : p.terminals()) sinks.push_back(t.vertex);

  const auto net = flow::FlowGraph::fromGraph(p.graph());
  std::vector<flow::FlowResult> results(sources.size());
  parallelFor(sources.size(), ctx.threads,
              [&](std::size_t i) { results[i] = flow::maxFlowST(net, sources[i], sinks); });

  // A side is applied only if it swallows or avoids each earlier applied set;
  // the union of two partially overlapping sides is not justified.
  const VertexId slots = p.graph().slotCount();
  std::vector<std::uint32_t> group(slots, 0);  // 0: untouched
  std::vector<std::size_t> group_size{0};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& side = results[i].source_side;
    if (side.size() <= 1) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> touched;
    for (const VertexId v : side) {
      if (group[v] == 0) continue;
      auto it = std::find_if(touched.begin(), touched.end(), [&](const auto& e) { return e.first == group[v]; });
      if (it == touched.end()) {
        touched.emplace_back(group[v], 1);
      } else {
        ++it->second;
      }
    }
    const bool nested = std::all_of(touched.begin(), touched.end(),
                                    [&](const auto& e) { return e.second == group_size[e.first]; });
    if (!nested) continue;
    const auto id = static_cast<std::uint32_t>(group_size.size());
    group_size.push_back(side.size());
    for (const VertexId v : side) group[v] = id;

    const VertexId before = p.graph().numVertices();
    p.contractVertexSet(side, sources[i]);
    out.contracted += before - p.graph().numVertices();
  }
  return out;
}

}  // namespace mtcut::reduce
