#include <algorithm>

#include "mtcut/reductions.hpp"

namespace mtcut::reduce {

namespace {

/// Iterative DFS forest with preorder numbers, lowpoints and subtree sizes.
struct DfsForest {
  std::vector<VertexId> order;   // preorder
  std::vector<VertexId> pre;     // slot -> preorder index, kInvalidVertex if unvisited
  std::vector<VertexId> parent;  // kInvalidVertex for roots
  std::vector<VertexId> low;
  std::vector<VertexId> size;

  explicit DfsForest(const ContractableGraph& g)
      : pre(g.slotCount(), kInvalidVertex),
        parent(g.slotCount(), kInvalidVertex),
        low(g.slotCount(), 0),
        size(g.slotCount(), 0) {
    order.reserve(g.numVertices());
  }

  void visit(const ContractableGraph& g, VertexId root) {
    using It = ContractableGraph::Neighborhood::const_iterator;
    std::vector<std::pair<VertexId, It>> stack;
    auto enter = [&](VertexId v, VertexId from) {
      pre[v] = low[v] = static_cast<VertexId>(order.size());
      parent[v] = from;
      size[v] = 1;
      order.push_back(v);
      stack.emplace_back(v, g.neighbors(v).begin());
    };
    enter(root, kInvalidVertex);
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it != g.neighbors(v).end()) {
        const VertexId x = it->first;
        ++it;
        if (pre[x] == kInvalidVertex) {
          enter(x, v);
        } else if (x != parent[v]) {
          low[v] = std::min(low[v], pre[x]);
        }
        continue;
      }
      const VertexId done = v;
      stack.pop_back();
      const VertexId up = parent[done];
      if (up != kInvalidVertex) {
        low[up] = std::min(low[up], low[done]);
        size[up] += size[done];
      }
    }
  }
};

}  // namespace

std::vector<VertexId> articulationPoints(const ContractableGraph& g) {
  DfsForest dfs(g);
  for (VertexId v = 0; v < g.slotCount(); ++v) {
    if (g.isAlive(v) && dfs.pre[v] == kInvalidVertex) dfs.visit(g, v);
  }
  std::vector<VertexId> root_children(g.slotCount(), 0);
  std::vector<char> is_ap(g.slotCount(), 0);
  for (const VertexId c : dfs.order) {
    const VertexId p = dfs.parent[c];
    if (p == kInvalidVertex) continue;
    if (dfs.parent[p] == kInvalidVertex) {
      ++root_children[p];
    } else if (dfs.low[c] >= dfs.pre[p]) {
      is_ap[p] = 1;
    }
  }
  std::vector<VertexId> out;
  for (const VertexId v : dfs.order) {
    if (is_ap[v] || (dfs.parent[v] == kInvalidVertex && root_children[v] >= 2)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RuleOutcome reduceArticulationPoints(Problem& p) {
  RuleOutcome out;
  const auto& g = p.graph();
  // Rooting each DFS tree at a terminal makes the component above any
  // articulation point contain that terminal, so only subtrees can be
  // terminal-free.
  DfsForest dfs(g);
  for (const auto& t : p.terminals()) {
    if (dfs.pre[t.vertex] == kInvalidVertex) dfs.visit(g, t.vertex);
  }
  std::vector<VertexId> terminals_below(g.slotCount(), 0);
  for (auto it = dfs.order.rbegin(); it != dfs.order.rend(); ++it) {
    const VertexId v = *it;
    if (p.isTerminal(v)) ++terminals_below[v];
    if (dfs.parent[v] != kInvalidVertex) terminals_below[dfs.parent[v]] += terminals_below[v];
  }

  struct Hanging {
    VertexId articulation;
    VertexId child;
  };
  std::vector<Hanging> hanging;
  std::vector<std::vector<VertexId>> children(g.slotCount());
  for (const VertexId c : dfs.order) {
    if (dfs.parent[c] != kInvalidVertex) children[dfs.parent[c]].push_back(c);
  }
  std::vector<char> covered(dfs.order.size(), 0);
  for (VertexId i = 0; i < dfs.order.size(); ++i) {
    if (covered[i]) continue;  // inside a subtree that is already absorbed
    const VertexId phi = dfs.order[i];
    const bool root = dfs.parent[phi] == kInvalidVertex;
    for (const VertexId c : children[phi]) {
      const bool separated = root || dfs.low[c] >= dfs.pre[phi];
      if (separated && terminals_below[c] == 0) {
        hanging.push_back({phi, c});
        std::fill(covered.begin() + dfs.pre[c], covered.begin() + dfs.pre[c] + dfs.size[c], 1);
      }
    }
  }
  for (const auto& h : hanging) {
    const auto begin = dfs.order.begin() + dfs.pre[h.child];
    std::vector<VertexId> component(begin, begin + dfs.size[h.child]);
    p.contractVertexSet(component, h.articulation);
    out.contracted += component.size();
  }
  return out;
}

}  // namespace mtcut::reduce
