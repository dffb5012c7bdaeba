#include "mtcut/localsearch.hpp"

#include <algorithm>
#include <random>

#include "mtcut/maxflow.hpp"

namespace mtcut::ls {

GainTable::GainTable(const StaticGraph& g, const Assignment& a, int k)
    : g_(&g), k_(k), block_(a), conn_(static_cast<std::size_t>(g.numVertices()) * k, 0) {
  for (VertexId v = 0; v < g.numVertices(); ++v) {
    for (const auto& arc : g.neighbors(v)) {
      conn_[index(v, a[arc.target])] += arc.weight;
      if (v < arc.target && a[v] != a[arc.target]) cut_ += arc.weight;
    }
  }
}

GainTable::Gain GainTable::gain(VertexId v) const {
  Gain best;
  const EdgeWeight own = connection(v, block_[v]);
  for (BlockId b = 0; b < k_; ++b) {
    if (b == block_[v]) continue;
    const EdgeWeight value = connection(v, b) - own;
    if (best.block == kNoBlock || value > best.value) best = {b, value};
  }
  return best;
}

void GainTable::move(VertexId v, BlockId to) {
  const BlockId from = block_[v];
  if (from == to) return;
  cut_ -= connection(v, to) - connection(v, from);
  for (const auto& arc : g_->neighbors(v)) {
    conn_[index(arc.target, from)] -= arc.weight;
    conn_[index(arc.target, to)] += arc.weight;
  }
  block_[v] = to;
}

bool GainTable::consistent() const {
  const GainTable fresh(*g_, block_, k_);
  return fresh.conn_ == conn_ && fresh.cut_ == cut_;
}

bool klPass(const StaticGraph& g, Assignment& a, int k, std::span<const char> fixed) {
  if (k < 2) return false;
  GainTable table(g, a, k);
  const EdgeWeight before = table.cut();
  const VertexId n = g.numVertices();
  std::vector<char> moved(n, 0);

  for (VertexId v = 0; v < n; ++v) {
    if (fixed[v] || !table.isBoundary(v)) continue;
    const auto best = table.gain(v);
    if (best.value >= 0) {
      table.move(v, best.block);
      moved[v] = 1;
    }
  }

  for (VertexId v = 0; v < n; ++v) {
    if (fixed[v] || moved[v] || !table.isBoundary(v)) continue;
    const auto gv = table.gain(v);
    if (gv.value >= 0) continue;
    for (const auto& arc : g.neighbors(v)) {
      const VertexId u = arc.target;
      if (fixed[u] || moved[u] || table.block(u) != table.block(v)) continue;
      const auto gu = table.gain(u);
      if (gu.block != gv.block) continue;
      if (gu.value + gv.value + 2 * arc.weight > 0) {
        table.move(v, gv.block);
        table.move(u, gv.block);
        moved[v] = moved[u] = 1;
        break;
      }
    }
  }

  a = table.assignment();
  return table.cut() < before;
}

bool pairwiseFlowRefine(const StaticGraph& g, Assignment& a, BlockId i, BlockId j, std::span<const char> fixed) {
  // Local ids: 0 is every fixed vertex of block i, 1 every fixed vertex of
  // block j, the free vertices of both blocks follow.
  const VertexId n = g.numVertices();
  std::vector<VertexId> local(n, kInvalidVertex);
  std::vector<VertexId> members;
  VertexId next = 2;
  bool has_i = false;
  bool has_j = false;
  for (VertexId v = 0; v < n; ++v) {
    if (a[v] != i && a[v] != j) continue;
    if (fixed[v]) {
      local[v] = a[v] == i ? 0 : 1;
      (a[v] == i ? has_i : has_j) = true;
    } else {
      local[v] = next++;
      members.push_back(v);
    }
  }
  if (!has_i || !has_j) return false;

  std::vector<WeightedEdge> edges;
  EdgeWeight current = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (local[v] == kInvalidVertex) continue;
    for (const auto& arc : g.neighbors(v)) {
      const VertexId u = arc.target;
      if (u < v || local[u] == kInvalidVertex) continue;
      if (a[u] != a[v]) current += arc.weight;
      if (local[u] != local[v]) edges.push_back({local[u], local[v], arc.weight});
    }
  }
  if (current == 0) return false;

  const auto net = flow::FlowGraph::fromEdges(next, edges);
  const VertexId sink = 1;
  const auto result = flow::maxFlow(net, 0, std::span<const VertexId>(&sink, 1));
  if (result.value >= current) return false;
  std::vector<char> source(next, 0);
  for (const VertexId x : result.source_side) source[x] = 1;
  for (const VertexId v : members) a[v] = source[local[v]] ? i : j;
  return true;
}

namespace {

std::vector<EdgeWeight> blockWeights(const StaticGraph& g, const Assignment& a, int k) {
  std::vector<EdgeWeight> w(static_cast<std::size_t>(k) * k, 0);
  for (VertexId v = 0; v < g.numVertices(); ++v) {
    for (const auto& arc : g.neighbors(v)) {
      if (v < arc.target && a[v] != a[arc.target]) {
        w[a[v] * k + a[arc.target]] += arc.weight;
        w[a[arc.target] * k + a[v]] += arc.weight;
      }
    }
  }
  return w;
}

}  // namespace

Assignment refine(const StaticGraph& g, Assignment a, int k, std::span<const char> fixed,
                  const RefineOptions& options) {
  auto expired = [&] { return std::chrono::steady_clock::now() >= options.deadline; };
  while (!expired() && klPass(g, a, k, fixed)) {
  }

  std::mt19937_64 rng(options.seed);
  std::vector<EdgeWeight> last(static_cast<std::size_t>(k) * k, -1);
  auto weights = blockWeights(g, a, k);
  while (!expired()) {
    std::vector<std::pair<BlockId, BlockId>> pending;
    for (BlockId i = 0; i < k; ++i) {
      for (BlockId j = i + 1; j < k; ++j) {
        const std::size_t ij = static_cast<std::size_t>(i) * k + j;
        if (weights[ij] > 0 && weights[ij] != last[ij]) pending.emplace_back(i, j);
      }
    }
    if (pending.empty()) break;
    std::shuffle(pending.begin(), pending.end(), rng);
    for (const auto& [i, j] : pending) {
      if (expired()) break;
      if (pairwiseFlowRefine(g, a, i, j, fixed)) weights = blockWeights(g, a, k);
      last[static_cast<std::size_t>(i) * k + j] = weights[static_cast<std::size_t>(i) * k + j];
    }
  }

  while (!expired() && klPass(g, a, k, fixed)) {
  }
  return a;
}

std::vector<char> terminalMask(VertexId n, std::span<const VertexId> terminals) {
  std::vector<char> mask(n, 0);
  for (const VertexId t : terminals) mask[t] = 1;
  return mask;
}

}  // namespace mtcut::ls
