#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace mtcut::testing {

namespace {

struct Search {
  VertexId n;
  int k;
  std::vector<std::vector<std::pair<VertexId, EdgeWeight>>> adj;
  std::vector<VertexId> order;  // free vertices
  Assignment labels;
  Assignment best_labels;
  EdgeWeight best = kInfiniteWeight;

  void run(std::size_t depth, EdgeWeight cost) {
    if (cost >= best) return;
    if (depth == order.size()) {
      best = cost;
      best_labels = labels;
      return;
    }
    const VertexId v = order[depth];
    for (BlockId b = 0; b < k; ++b) {
      EdgeWeight extra = 0;
      for (const auto& [x, w] : adj[v]) {
        if (labels[x] != kNoBlock && labels[x] != b) extra += w;
      }
      labels[v] = b;
      run(depth + 1, cost + extra);
      labels[v] = kNoBlock;
    }
  }
};

}  // namespace

OracleResult bruteForce(VertexId n, std::span<const WeightedEdge> edges, std::span<const VertexId> terminals) {
  Search s;
  s.n = n;
  s.k = static_cast<int>(terminals.size());
  s.adj.resize(n);
  for (const auto& e : edges) {
    s.adj[e.u].emplace_back(e.v, e.weight);
    s.adj[e.v].emplace_back(e.u, e.weight);
  }
  s.labels.assign(n, kNoBlock);
  EdgeWeight base = 0;
  for (std::size_t i = 0; i < terminals.size(); ++i) s.labels[terminals[i]] = static_cast<BlockId>(i);
  for (const auto& e : edges) {
    if (s.labels[e.u] != kNoBlock && s.labels[e.v] != kNoBlock && s.labels[e.u] != s.labels[e.v]) base += e.weight;
  }
  // Visit high-degree vertices first so pruning bites early.
  for (VertexId v = 0; v < n; ++v) {
    if (s.labels[v] == kNoBlock) s.order.push_back(v);
  }
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](VertexId a, VertexId b) { return s.adj[a].size() > s.adj[b].size(); });
  s.run(0, base);
  return {s.best, s.best_labels};
}

OracleResult bruteForce(const Instance& inst) { return bruteForce(inst.n, inst.edges, inst.terminals); }

EdgeWeight bruteForceProblem(const Problem& p) {
  const auto& g = p.graph();
  if (p.terminals().size() <= 1) return p.deletedWeight();
  std::vector<VertexId> local(g.slotCount(), kInvalidVertex);
  VertexId n = 0;
  for (const VertexId v : g.liveVertices()) local[v] = n++;
  std::vector<WeightedEdge> edges;
  for (const auto& e : g.edges()) edges.push_back({local[e.u], local[e.v], e.weight});
  std::vector<VertexId> terminals;
  for (const auto& t : p.terminals()) terminals.push_back(local[t.vertex]);
  return bruteForce(n, edges, terminals).value + p.deletedWeight();
}

Instance randomGraph(std::mt19937_64& rng, VertexId n, std::size_t m, EdgeWeight max_w) {
  Instance inst;
  inst.n = n;
  std::uniform_int_distribution<EdgeWeight> weight(1, max_w);
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (VertexId i = 1; i < n; ++i) {
    const VertexId j = std::uniform_int_distribution<VertexId>(0, i - 1)(rng);
    const VertexId a = perm[i];
    const VertexId b = perm[j];
    used[a][b] = used[b][a] = 1;
    inst.edges.push_back({std::min(a, b), std::max(a, b), weight(rng)});
  }
  const std::size_t max_edges = static_cast<std::size_t>(n) * (n - 1) / 2;
  m = std::min(m, max_edges);
  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  while (inst.edges.size() < m) {
    const VertexId a = vertex(rng);
    const VertexId b = vertex(rng);
    if (a == b || used[a][b]) continue;
    used[a][b] = used[b][a] = 1;
    inst.edges.push_back({std::min(a, b), std::max(a, b), weight(rng)});
  }
  return inst;
}

Instance randomInstance(std::mt19937_64& rng, int k, VertexId max_n, std::size_t max_m, EdgeWeight max_w) {
  const VertexId n = std::uniform_int_distribution<VertexId>(static_cast<VertexId>(k) + 1, max_n)(rng);
  const std::size_t max_edges = std::min<std::size_t>(max_m, static_cast<std::size_t>(n) * (n - 1) / 2);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(n - 1, max_edges)(rng);
  Instance inst = randomGraph(rng, n, m, max_w);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  inst.terminals.assign(perm.begin(), perm.begin() + k);
  return inst;
}

std::vector<Instance> oracleCorpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(randomInstance(rng, i % 2 == 0 ? 3 : 4));
    out.back().name = "random-" + std::to_string(i);
  }
  return out;
}

Instance fixtureF1() { return {"F1", 3, {{0, 1, 2}, {1, 2, 1}}, {0, 2}}; }
Instance fixtureF2() { return {"F2", 3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, {0, 1, 2}}; }
Instance fixtureF3() { return {"F3", 4, {{3, 0, 3}, {3, 1, 1}, {3, 2, 1}}, {0, 1, 2}}; }
Instance fixtureF4() { return {"F4", 5, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1}, {4, 1, 1}}, {0, 2}}; }
Instance fixtureF5() { return {"F5", 4, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}}, {0, 1}}; }

std::vector<Instance> fixtures() { return {fixtureF1(), fixtureF2(), fixtureF3(), fixtureF4(), fixtureF5()}; }

EdgeWeight localConnectivity(VertexId n, std::span<const WeightedEdge> edges, VertexId s, VertexId t) {
  // Edmonds-Karp on a dense capacity matrix.
  std::vector<std::vector<EdgeWeight>> cap(n, std::vector<EdgeWeight>(n, 0));
  for (const auto& e : edges) {
    cap[e.u][e.v] += e.weight;
    cap[e.v][e.u] += e.weight;
  }
  EdgeWeight flow = 0;
  while (true) {
    std::vector<VertexId> prev(n, kInvalidVertex);
    prev[s] = s;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty() && prev[t] == kInvalidVertex) {
      const VertexId x = q.front();
      q.pop();
      for (VertexId y = 0; y < n; ++y) {
        if (prev[y] == kInvalidVertex && cap[x][y] > 0) {
          prev[y] = x;
          q.push(y);
        }
      }
    }
    if (prev[t] == kInvalidVertex) return flow;
    EdgeWeight bottleneck = kInfiniteWeight;
    for (VertexId y = t; y != s; y = prev[y]) bottleneck = std::min(bottleneck, cap[prev[y]][y]);
    for (VertexId y = t; y != s; y = prev[y]) {
      cap[prev[y]][y] -= bottleneck;
      cap[y][prev[y]] += bottleneck;
    }
    flow += bottleneck;
  }
}

std::vector<VertexId> naiveArticulationPoints(VertexId n, std::span<const WeightedEdge> edges) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  auto components = [&](VertexId removed) {
    std::vector<char> seen(n, 0);
    if (removed != kInvalidVertex) seen[removed] = 1;
    std::size_t count = 0;
    for (VertexId s = 0; s < n; ++s) {
      if (seen[s]) continue;
      ++count;
      std::vector<VertexId> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        for (const VertexId y : adj[x]) {
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    return count;
  };
  const std::size_t base = components(kInvalidVertex);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (components(v) > base) out.push_back(v);
  }
  return out;
}

}  // namespace mtcut::testing
