#include "mtcut/problem.hpp"

#include <algorithm>
#include <string>

namespace mtcut {

Problem::Problem(ContractableGraph graph, std::span<const VertexId> terminal_vertices)
    : graph_(std::move(graph)), terminal_of_slot_(graph_.slotCount(), kNoBlock) {
  if (terminal_vertices.size() < 2) throw InvalidInput("at least two terminals are required");
  for (std::size_t i = 0; i < terminal_vertices.size(); ++i) {
    if (terminal_vertices[i] >= graph_.originalCount()) {
      throw InvalidInput("terminal " + std::to_string(terminal_vertices[i]) + " out of range");
    }
    const VertexId t = graph_.currentVertex(terminal_vertices[i]);
    if (terminal_of_slot_[t] != kNoBlock) {
      throw InvalidInput("terminal vertices must be distinct");
    }
    terminal_of_slot_[t] = static_cast<BlockId>(i);
    terminals_.push_back({t, static_cast<BlockId>(i)});
  }
}

void Problem::contractEdge(VertexId u, VertexId v) {
  if (isTerminal(u) && isTerminal(v)) {
    throw InvalidOperation("cannot contract an edge between two terminals");
  }
  graph_.contractEdge(u, v);
  if (isTerminal(v)) {
    const BlockId t = terminal_of_slot_[v];
    terminal_of_slot_[v] = kNoBlock;
    terminal_of_slot_[u] = t;
    for (auto& term : terminals_) {
      if (term.vertex == v) term.vertex = u;
    }
  }
}

void Problem::contractVertexSet(std::span<const VertexId> set, VertexId into) {
  const VertexId target = graph_.representative(into);
  BlockId terminal = terminal_of_slot_[target];
  std::vector<VertexId> reps;
  reps.reserve(set.size());
  for (const VertexId s : set) {
    const VertexId r = graph_.representative(s);
    if (r == target) continue;
    if (terminal_of_slot_[r] != kNoBlock) {
      if (terminal != kNoBlock && terminal != terminal_of_slot_[r]) {
        throw InvalidOperation("vertex set contains two terminals");
      }
      terminal = terminal_of_slot_[r];
    }
    reps.push_back(r);
  }
  for (const VertexId r : reps) {
    if (graph_.representative(r) != target) graph_.mergeVertices(target, graph_.representative(r));
    terminal_of_slot_[r] = kNoBlock;
  }
  if (terminal != kNoBlock) {
    terminal_of_slot_[target] = terminal;
    for (auto* list : {&terminals_, &retired_}) {
      for (auto& term : *list) {
        if (term.index == terminal) term.vertex = target;
      }
    }
  }
}

EdgeWeight Problem::deleteEdge(VertexId u, VertexId v) {
  const EdgeWeight w = graph_.deleteEdge(u, v);
  deleted_weight_ += w;
  if (lower_bound_ < deleted_weight_) lower_bound_ = deleted_weight_;
  return w;
}

std::size_t Problem::retireIsolatedTerminals() {
  std::size_t moved = 0;
  for (auto it = terminals_.begin(); it != terminals_.end();) {
    if (graph_.degree(it->vertex) == 0) {
      retired_.push_back(*it);
      it = terminals_.erase(it);
      ++moved;
    } else {
      ++it;
    }
  }
  return moved;
}

bool Problem::isSolved() const {
  if (terminals_.size() <= 1) return true;
  std::vector<char> seen(graph_.slotCount(), 0);
  std::vector<VertexId> stack;
  for (const auto& t : terminals_) {
    if (seen[t.vertex]) return false;  // reached from an earlier terminal
    seen[t.vertex] = 1;
    stack.push_back(t.vertex);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& [x, w] : graph_.neighbors(v)) {
        if (!seen[x]) {
          if (isTerminal(x)) return false;
          seen[x] = 1;
          stack.push_back(x);
        }
      }
    }
  }
  return true;
}

KernelLabels Problem::trivialLabels() const {
  KernelLabels labels(graph_.slotCount(), kNoBlock);
  std::vector<VertexId> stack;
  auto flood = [&](VertexId s, BlockId b) {
    labels[s] = b;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const auto& [x, w] : graph_.neighbors(v)) {
        if (labels[x] == kNoBlock) {
          labels[x] = b;
          stack.push_back(x);
        }
      }
    }
  };
  for (const auto& t : terminals_) {
    if (labels[t.vertex] == kNoBlock) flood(t.vertex, t.index);
  }
  for (const auto& t : retired_) labels[t.vertex] = t.index;
  const BlockId fallback = !terminals_.empty() ? terminals_.front().index : retired_.front().index;
  for (VertexId v = 0; v < graph_.slotCount(); ++v) {
    if (graph_.isAlive(v) && labels[v] == kNoBlock) flood(v, fallback);
  }
  return labels;
}

void Problem::compact() {
  const auto remap = graph_.compact();
  std::vector<BlockId> terminal_of_slot(graph_.slotCount(), kNoBlock);
  for (auto* list : {&terminals_, &retired_}) {
    for (auto& t : *list) {
      t.vertex = remap[t.vertex];
      terminal_of_slot[t.vertex] = t.index;
    }
  }
  terminal_of_slot_ = std::move(terminal_of_slot);
}

Assignment projectSolution(const Problem& p, std::span<const BlockId> kernel_labels) {
  const auto& g = p.graph();
  if (kernel_labels.size() < g.slotCount()) {
    throw IncompleteSolution("kernel labeling shorter than slot count");
  }
  for (const auto* list : {&p.terminals(), &p.retiredTerminals()}) {
    for (const auto& t : *list) {
      if (kernel_labels[t.vertex] != t.index) {
        throw InfeasibleAssignment("terminal " + std::to_string(t.index) +
                                   " carries label " + std::to_string(kernel_labels[t.vertex]));
      }
    }
  }
  Assignment out(g.originalCount(), kNoBlock);
  for (VertexId o = 0; o < g.originalCount(); ++o) {
    const BlockId b = kernel_labels[g.currentVertex(o)];
    if (b == kNoBlock) {
      throw IncompleteSolution("live vertex " + std::to_string(g.currentVertex(o)) + " has no label");
    }
    out[o] = b;
  }
  return out;
}

std::vector<BlockId> terminalAnchors(const Problem& p) {
  const auto& g = p.graph();
  std::vector<BlockId> anchors(g.originalCount(), kNoBlock);
  for (VertexId o = 0; o < g.originalCount(); ++o) anchors[o] = p.terminalIndex(g.currentVertex(o));
  return anchors;
}

EdgeWeight kernelCutValue(const Problem& p, std::span<const BlockId> kernel_labels) {
  EdgeWeight total = 0;
  for (const auto& e : p.graph().edges()) {
    if (kernel_labels[e.u] != kernel_labels[e.v]) total += e.weight;
  }
  return total;
}

}  // namespace mtcut
