#include <cmath>
#include <deque>
#include <random>

#include "mtcut/bench.hpp"

namespace mtcut::bench {

namespace {

// Neighbors of a StaticGraph are sorted, so this is ascending-id BFS.
VertexId lastDequeued(const StaticGraph& g, const std::vector<VertexId>& sources) {
  std::vector<char> seen(g.numVertices(), 0);
  std::vector<VertexId> queue;
  queue.reserve(g.numVertices());
  for (const VertexId s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& arc : g.neighbors(queue[head])) {
      if (!seen[arc.target]) {
        seen[arc.target] = 1;
        queue.push_back(arc.target);
      }
    }
  }
  return queue.back();
}

}  // namespace

std::vector<VertexId> generateTerminals(const StaticGraph& g, std::size_t k, std::uint64_t seed) {
  const VertexId n = g.numVertices();
  if (k < 2 || k > n) throw InvalidInput("k must lie in [2, n]");
  std::vector<VertexId> component;
  if (connectedComponents(g, component) != 1) throw InvalidInput("terminal generation needs a connected graph");

  std::mt19937_64 rng(seed);
  const VertexId start = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
  std::vector<VertexId> terminals{lastDequeued(g, {start})};
  while (terminals.size() < k) terminals.push_back(lastDequeued(g, terminals));
  return terminals;
}

Problem growTerminalBlocks(const StaticGraph& g, std::span<const VertexId> terminals, double fraction,
                           std::uint64_t seed) {
  const VertexId n = g.numVertices();
  const std::size_t k = terminals.size();
  if (!(fraction >= 0 && fraction < 1)) throw InvalidInput("preset fraction must lie in [0, 1)");
  const auto quota = static_cast<std::size_t>(std::floor(fraction * n + 1e-9));
  if (quota + k > n) throw InvalidInput("preset fraction leaves too few vertices");

  Problem p(ContractableGraph(g), terminals);
  std::vector<BlockId> block(n, kNoBlock);
  for (std::size_t i = 0; i < k; ++i) block[terminals[i]] = static_cast<BlockId>(i);

  std::vector<std::deque<VertexId>> frontier(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& arc : g.neighbors(terminals[i])) frontier[i].push_back(arc.target);
  }
  std::vector<std::vector<VertexId>> claimed(k);
  std::size_t total = 0;
  std::size_t active = k;
  std::vector<char> exhausted(k, 0);
  for (std::size_t turn = static_cast<std::size_t>(seed % k); total < quota && active > 0; turn = (turn + 1) % k) {
    if (exhausted[turn]) continue;
    auto& queue = frontier[turn];
    while (!queue.empty() && block[queue.front()] != kNoBlock) queue.pop_front();
    if (queue.empty()) {
      exhausted[turn] = 1;
      --active;
      continue;
    }
    const VertexId v = queue.front();
    queue.pop_front();
    block[v] = static_cast<BlockId>(turn);
    claimed[turn].push_back(v);
    ++total;
    for (const auto& arc : g.neighbors(v)) {
      if (block[arc.target] == kNoBlock) queue.push_back(arc.target);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!claimed[i].empty()) p.contractVertexSet(claimed[i], terminals[i]);
  }
  return p;
}

}  // namespace mtcut::bench
