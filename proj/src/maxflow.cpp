#include "mtcut/maxflow.hpp"

#include <algorithm>
#include <string>

#include "mtcut/parallel.hpp"

namespace mtcut::flow {

FlowGraph FlowGraph::fromEdges(VertexId n, std::span<const WeightedEdge> edges) {
  FlowGraph net;
  net.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    ++net.offsets_[e.u + 1];
    ++net.offsets_[e.v + 1];
  }
  for (VertexId v = 0; v < n; ++v) net.offsets_[v + 1] += net.offsets_[v];
  net.arcs_.resize(edges.size() * 2);
  std::vector<std::uint32_t> fill(net.offsets_.begin(), net.offsets_.end() - 1);
  for (const auto& e : edges) {
    const std::uint32_t a = fill[e.u]++;
    const std::uint32_t b = fill[e.v]++;
    net.arcs_[a] = {e.v, b, e.weight};
    net.arcs_[b] = {e.u, a, e.weight};
  }
  return net;
}

FlowGraph FlowGraph::fromGraph(const ContractableGraph& g) {
  std::vector<VertexId> local_of_slot(g.slotCount(), kInvalidVertex);
  std::vector<VertexId> slot_of_local;
  slot_of_local.reserve(g.numVertices());
  for (VertexId v = 0; v < g.slotCount(); ++v) {
    if (g.isAlive(v)) {
      local_of_slot[v] = static_cast<VertexId>(slot_of_local.size());
      slot_of_local.push_back(v);
    }
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(g.numEdges());
  for (const VertexId u : slot_of_local) {
    for (const auto& [v, w] : g.neighbors(u)) {
      if (u < v) edges.push_back({local_of_slot[u], local_of_slot[v], w});
    }
  }
  FlowGraph net = fromEdges(static_cast<VertexId>(slot_of_local.size()), edges);
  net.local_of_slot_ = std::move(local_of_slot);
  net.slot_of_local_ = std::move(slot_of_local);
  return net;
}

namespace {

class Dinic {
 public:
  Dinic(const FlowGraph& net, VertexId source, std::span<const VertexId> sinks)
      : net_(net),
        source_(source),
        residual_(net.numArcs()),
        level_(net.numVertices()),
        current_(net.numVertices()),
        is_sink_(net.numVertices(), 0) {
    for (std::size_t a = 0; a < net.numArcs(); ++a) residual_[a] = net.arc(static_cast<std::uint32_t>(a)).capacity;
    for (const VertexId t : sinks) is_sink_[t] = 1;
  }

  EdgeWeight run() {
    EdgeWeight total = 0;
    while (buildLevels()) total += blockingFlow();
    return total;
  }

  /// Largest source side: vertices of s's component that cannot reach a sink
  /// in the residual network.
  std::vector<VertexId> largestSourceSide() const {
    const VertexId n = net_.numVertices();
    std::vector<char> reaches_sink(n, 0);
    std::vector<VertexId> queue;
    for (VertexId v = 0; v < n; ++v) {
      if (is_sink_[v]) {
        reaches_sink[v] = 1;
        queue.push_back(v);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      for (std::uint32_t a = net_.firstArc(x); a < net_.endArc(x); ++a) {
        const auto& arc = net_.arc(a);
        // arc.reverse runs arc.head -> x
        if (!reaches_sink[arc.head] && residual_[arc.reverse] > 0) {
          reaches_sink[arc.head] = 1;
          queue.push_back(arc.head);
        }
      }
    }
    std::vector<char> seen(n, 0);
    std::vector<VertexId> side{source_};
    seen[source_] = 1;
    for (std::size_t head = 0; head < side.size(); ++head) {
      const VertexId x = side[head];
      for (std::uint32_t a = net_.firstArc(x); a < net_.endArc(x); ++a) {
        const VertexId y = net_.arc(a).head;
        if (!seen[y] && !reaches_sink[y]) {
          seen[y] = 1;
          side.push_back(y);
        }
      }
    }
    std::sort(side.begin(), side.end());
    return side;
  }

 private:
  bool buildLevels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<VertexId> queue{source_};
    level_[source_] = 0;
    bool reached = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      if (is_sink_[x]) {
        reached = true;
        continue;
      }
      for (std::uint32_t a = net_.firstArc(x); a < net_.endArc(x); ++a) {
        const VertexId y = net_.arc(a).head;
        if (level_[y] < 0 && residual_[a] > 0) {
          level_[y] = level_[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return reached;
  }

  EdgeWeight blockingFlow() {
    for (VertexId v = 0; v < net_.numVertices(); ++v) current_[v] = net_.firstArc(v);
    EdgeWeight total = 0;
    std::vector<std::uint32_t> path;  // arcs from the source
    VertexId v = source_;
    while (true) {
      if (is_sink_[v]) {
        EdgeWeight bottleneck = kInfiniteWeight;
        for (const auto a : path) bottleneck = std::min(bottleneck, residual_[a]);
        std::size_t cut = path.size();
        for (std::size_t i = 0; i < path.size(); ++i) {
          residual_[path[i]] -= bottleneck;
          residual_[net_.arc(path[i]).reverse] += bottleneck;
          if (residual_[path[i]] == 0 && cut == path.size()) cut = i;
        }
        total += bottleneck;
        path.resize(cut);
        v = path.empty() ? source_ : net_.arc(path.back()).head;
        continue;
      }
      std::uint32_t& a = current_[v];
      while (a < net_.endArc(v)) {
        const auto& arc = net_.arc(a);
        if (residual_[a] > 0 && level_[arc.head] == level_[v] + 1) break;
        ++a;
      }
      if (a < net_.endArc(v)) {
        path.push_back(a);
        v = net_.arc(a).head;
        continue;
      }
      level_[v] = -1;  // dead end for this phase
      if (path.empty()) break;
      path.pop_back();
      v = path.empty() ? source_ : net_.arc(path.back()).head;
      ++current_[v];
    }
    return total;
  }

  const FlowGraph& net_;
  VertexId source_;
  std::vector<EdgeWeight> residual_;
  std::vector<int> level_;
  std::vector<std::uint32_t> current_;
  std::vector<char> is_sink_;
};

}  // namespace

FlowResult maxFlow(const FlowGraph& net, VertexId s, std::span<const VertexId> sinks) {
  if (sinks.empty()) throw InvalidInput("sink set must not be empty");
  if (std::find(sinks.begin(), sinks.end(), s) != sinks.end()) {
    throw InvalidInput("source must not be a sink");
  }
  Dinic dinic(net, s, sinks);
  FlowResult result;
  result.value = dinic.run();
  result.source_side = dinic.largestSourceSide();
  return result;
}

FlowResult maxFlowST(const FlowGraph& net, VertexId s, std::span<const VertexId> sinks) {
  std::vector<VertexId> local_sinks;
  local_sinks.reserve(sinks.size());
  for (const VertexId t : sinks) local_sinks.push_back(net.localOf(t));
  FlowResult r = maxFlow(net, net.localOf(s), local_sinks);
  for (auto& v : r.source_side) v = net.slotOf(v);
  std::sort(r.source_side.begin(), r.source_side.end());
  return r;
}

FlowResult maxFlowST(const ContractableGraph& g, VertexId s, std::span<const VertexId> sinks) {
  if (!g.isAlive(s)) throw InvalidInput("source " + std::to_string(s) + " is not a live vertex");
  for (const VertexId t : sinks) {
    if (!g.isAlive(t)) throw InvalidInput("sink " + std::to_string(t) + " is not a live vertex");
  }
  return maxFlowST(FlowGraph::fromGraph(g), s, sinks);
}

std::vector<FlowResult> isolatingCuts(const ContractableGraph& g, std::span<const VertexId> terminals,
                                      int threads) {
  if (terminals.size() < 2) throw InvalidInput("isolating cuts need at least two terminals");
  const FlowGraph net = FlowGraph::fromGraph(g);
  std::vector<FlowResult> results(terminals.size());
  parallelFor(terminals.size(), threads, [&](std::size_t i) {
    std::vector<VertexId> sinks;
    sinks.reserve(terminals.size() - 1);
    for (std::size_t j = 0; j < terminals.size(); ++j) {
      if (j != i) sinks.push_back(terminals[j]);
    }
    results[i] = maxFlowST(net, terminals[i], sinks);
  });
  return results;
}

IsolatingBounds isolatingBounds(std::span<const FlowResult> results) {
  EdgeWeight sum = 0;
  EdgeWeight heaviest = 0;
  for (const auto& r : results) {
    sum += r.value;
    heaviest = std::max(heaviest, r.value);
  }
  return {(sum + 1) / 2, sum - heaviest};
}

}  // namespace mtcut::flow
