#include <algorithm>
#include <unordered_map>

#include "mtcut/reductions.hpp"

namespace mtcut::reduce {

namespace {

bool candidate(const Problem& p, VertexId v, std::size_t limit) {
  const auto& g = p.graph();
  return g.isAlive(v) && !p.isTerminal(v) && g.degree(v) >= 1 && g.degree(v) <= limit;
}

// N(a) \ {b} == N(b) \ {a} with identical weights.
bool twins(const ContractableGraph& g, VertexId a, VertexId b) {
  if (g.degree(a) != g.degree(b)) return false;
  for (const auto& [x, w] : g.neighbors(a)) {
    if (x == b) continue;
    if (g.edgeWeight(b, x) != w) return false;
  }
  return true;
}

std::uint64_t neighborhoodDigest(const ContractableGraph& g, VertexId v,
                                 std::vector<std::pair<VertexId, EdgeWeight>>& scratch) {
  scratch.assign(g.neighbors(v).begin(), g.neighbors(v).end());
  std::sort(scratch.begin(), scratch.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  };
  for (const auto& [x, w] : scratch) {
    mix(x);
    mix(static_cast<std::uint64_t>(w));
  }
  return h;
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> equalNeighborhoodPairs(const Problem& p, std::size_t limit) {
  const auto& g = p.graph();
  std::vector<std::pair<VertexId, VertexId>> out;

  // Adjacent twins: the two neighborhoods differ only in each other.
  for (VertexId a = 0; a < g.slotCount(); ++a) {
    if (!candidate(p, a, limit)) continue;
    for (const auto& [b, w] : g.neighbors(a)) {
      if (b > a && candidate(p, b, limit) && twins(g, a, b)) out.emplace_back(a, b);
    }
  }

  // Non-adjacent twins have identical neighborhoods; group them by digest.
  std::unordered_map<std::uint64_t, std::vector<VertexId>> buckets;
  std::vector<std::pair<VertexId, EdgeWeight>> scratch;
  for (VertexId v = 0; v < g.slotCount(); ++v) {
    if (candidate(p, v, limit)) buckets[neighborhoodDigest(g, v, scratch)].push_back(v);
  }
  for (const auto& [digest, group] : buckets) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const VertexId a = group[i];
        const VertexId b = group[j];
        if (!g.hasEdge(a, b) && twins(g, a, b)) out.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RuleOutcome reduceEqualNeighborhoods(Problem& p, std::size_t limit) {
  RuleOutcome out;
  const auto pairs = equalNeighborhoodPairs(p, limit);
  const auto& g = p.graph();
  for (const auto& [a0, b0] : pairs) {
    const VertexId a = g.representative(a0);
    const VertexId b = g.representative(b0);
    // Earlier contractions may have changed either neighborhood.
    if (a == b || !candidate(p, a, limit) || !candidate(p, b, limit) || !twins(g, a, b)) continue;
    p.contractVertexSet(std::span<const VertexId>(&b, 1), a);
    ++out.contracted;
  }
  return out;
}

}  // namespace mtcut::reduce
