#include "mtcut/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>

#include <tbb/info.h>
#include <tbb/task_arena.h>
#include <tbb/task_group.h>

#include "mtcut/ilp.hpp"
#include "mtcut/localsearch.hpp"

namespace mtcut {

VertexId selectBranchVertex(const Problem& p) {
  const auto& g = p.graph();
  VertexId best = kInvalidVertex;
  for (const auto& t : p.terminals()) {
    for (const auto& [x, w] : g.neighbors(t.vertex)) {
      if (p.isTerminal(x)) continue;
      if (best == kInvalidVertex || g.weightedDegree(x) > g.weightedDegree(best) ||
          (g.weightedDegree(x) == g.weightedDegree(best) && x < best)) {
        best = x;
      }
    }
  }
  if (best == kInvalidVertex) throw InvalidOperation("no non-terminal vertex is adjacent to a terminal");
  return best;
}

std::vector<Problem> branchVertex(const Problem& p, VertexId x, EdgeWeight best, const BranchOptions& options) {
  const auto& g = p.graph();
  struct Adjacent {
    VertexId vertex;
    BlockId index;
    EdgeWeight weight;
  };
  std::vector<Adjacent> adjacent;
  for (const auto& t : p.terminals()) {
    const EdgeWeight w = g.edgeWeight(x, t.vertex);
    if (w > 0) adjacent.push_back({t.vertex, t.index, w});
  }
  EdgeWeight w_max = 0;
  EdgeWeight w_terminals = 0;
  for (const auto& a : adjacent) {
    w_max = std::max(w_max, a.weight);
    w_terminals += a.weight;
  }
  const EdgeWeight w_rest = g.weightedDegree(x) - w_terminals;

  // Heaviest first, terminal index breaks ties.
  std::stable_sort(adjacent.begin(), adjacent.end(), [](const Adjacent& a, const Adjacent& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.index < b.index;
  });

  auto join = [&](const Adjacent& target) {
    Problem child = p;
    for (const auto& a : adjacent) {
      if (a.vertex != target.vertex) child.deleteEdge(x, a.vertex);
    }
    child.contractEdge(target.vertex, x);
    child.raiseLowerBound(p.lowerBound());
    return child;
  };

  std::vector<Problem> children;
  std::size_t joined = 0;
  for (const auto& a : adjacent) {
    if (a.weight + w_rest <= w_max) continue;  // some optimum keeps x out of this block
    if (options.inexact && joined >= static_cast<std::size_t>(std::max(options.beta, 0))) break;
    ++joined;
    Problem child = join(a);
    if (child.lowerBound() < best) children.push_back(std::move(child));
  }
  if (w_rest > w_max && adjacent.size() < p.terminals().size()) {
    Problem child = p;
    for (const auto& a : adjacent) child.deleteEdge(x, a.vertex);
    child.raiseLowerBound(p.lowerBound());
    if (child.lowerBound() < best) children.push_back(std::move(child));
  }
  if (joined == 0 && !adjacent.empty() && !(w_rest > w_max && adjacent.size() < p.terminals().size())) {
    // Every block was excluded; the heaviest terminal is never worse.
    Problem child = join(adjacent.front());
    if (child.lowerBound() < best) children.push_back(std::move(child));
  }
  return children;
}

std::vector<Problem> branchEdgeFallback(const Problem& p, EdgeWeight best) {
  const VertexId x = selectBranchVertex(p);
  VertexId target = kInvalidVertex;
  EdgeWeight heaviest = 0;
  for (const auto& t : p.terminals()) {
    const EdgeWeight w = p.graph().edgeWeight(x, t.vertex);
    if (w > heaviest) {
      heaviest = w;
      target = t.vertex;
    }
  }
  std::vector<Problem> children;
  Problem joined = p;
  joined.contractEdge(target, x);
  if (joined.lowerBound() < best) children.push_back(std::move(joined));
  Problem cut = p;
  cut.deleteEdge(x, target);
  if (cut.lowerBound() < best) children.push_back(std::move(cut));
  return children;
}

void shrinkTerminalsInexact(Problem& p, double delta) {
  if (!(delta > 0) || p.terminals().size() < 2) return;
  const auto& g = p.graph();
  std::vector<Terminal> order = p.terminals();
  std::stable_sort(order.begin(), order.end(), [&](const Terminal& a, const Terminal& b) {
    return g.weightedDegree(a.vertex) < g.weightedDegree(b.vertex);
  });
  const auto wanted = static_cast<std::size_t>(std::ceil(delta * static_cast<double>(order.size()) - 1e-9));
  const std::size_t count = std::min(wanted, order.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const VertexId t = order[i].vertex;
    std::vector<VertexId> around;
    for (const auto& [x, w] : g.neighbors(t)) around.push_back(x);
    for (const VertexId x : around) p.deleteEdge(t, x);
  }
  p.retireIsolatedTerminals();
  if (p.terminals().empty()) return;

  VertexId top = p.terminals().front().vertex;
  for (const auto& t : p.terminals()) {
    if (g.weightedDegree(t.vertex) > g.weightedDegree(top)) top = t.vertex;
  }
  std::vector<VertexId> absorb;
  for (const auto& [x, w] : g.neighbors(top)) {
    if (p.isTerminal(x)) continue;
    const bool private_neighbor = std::none_of(g.neighbors(x).begin(), g.neighbors(x).end(), [&](const auto& e) {
      return e.first != top && p.isTerminal(e.first);
    });
    if (private_neighbor) absorb.push_back(x);
  }
  p.contractVertexSet(absorb, top);
}

namespace {

using Clock = std::chrono::steady_clock;

struct QueueItem {
  EdgeWeight lower;
  std::uint64_t seq;
  bool reduced;
  Problem problem;
};

// Heap order: smallest lower bound on top, newest first among equals.
bool below(const QueueItem& a, const QueueItem& b) {
  if (a.lower != b.lower) return a.lower > b.lower;
  return a.seq < b.seq;
}

class Engine {
 public:
  Engine(const StaticGraph& original, std::span<const VertexId> terminals, const SolverConfig& config,
         const ImprovementHook& hook)
      : original_(original),
        terminals_(terminals.begin(), terminals.end()),
        config_(config),
        hook_(hook),
        start_(Clock::now()),
        bound_(start_),
        parallel_(config.threads > 1) {
    if (std::isfinite(config.time_limit_seconds)) {
      deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(std::max(config.time_limit_seconds, 0.0)));
    }
    ilp_enabled_ = !config.ilp.command.empty();
  }

  SolveResult run(Problem root) {
    k_ = static_cast<int>(root.originalTerminalCount());
    const auto anchors = terminalAnchors(root);
    fixed_.assign(original_.numVertices(), 0);
    for (VertexId v = 0; v < original_.numVertices(); ++v) fixed_[v] = anchors[v] != kNoBlock;
    Assignment fallback(original_.numVertices());
    for (VertexId v = 0; v < original_.numVertices(); ++v) fallback[v] = anchors[v] != kNoBlock ? anchors[v] : 0;

    if (parallel_) {
      arena_.emplace(std::min(config_.threads, tbb::info::default_concurrency()));
      arena_->execute([&] {
        start(std::move(root));
        group_.wait();
      });
    } else {
      start(std::move(root));
      while (auto item = pop()) process(std::move(*item));
    }

    if (!bound_.hasSolution()) bound_.tryImprove(cutValue(original_, fallback, terminals_), fallback);
    SolveResult result;
    result.assignment = bound_.bestAssignment();
    result.value = bound_.bestValue();
    result.events = bound_.events();
    stats_.timed_out = timed_out_;
    stats_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    result.stats = stats_;
    result.optimal = config_.mode == SolveMode::kExact && !timed_out_ && !dropped_;
    return result;
  }

 private:
  // Reduces the root problem, records the kernel statistics and queues it.
  void start(Problem root) {
    stats_.input_vertices = root.graph().numVertices();
    stats_.input_edges = root.graph().numEdges();
    auto ctx = context();
    const auto report = reduce::runReductionLoop(root, ctx, config_.reductions);
    stats_.root_report = report;
    stats_.kernel_vertices = stats_.peak_kernel_vertices = root.graph().numVertices();
    stats_.kernel_edges = root.graph().numEdges();
    stats_.root_lower_bound = root.lowerBound();
    if (report.timed_out) {
      timed_out_ = true;
    } else if (report.solved) {
      publish(root, root.trivialLabels());
    } else if (!report.pruned) {
      push(std::move(root), true);
    }
  }

  reduce::ReductionContext context() {
    auto ctx = reduce::contextFromConfig(config_, &bound_);
    ctx.deadline = deadline_;
    ctx.on_solution = [this](const Problem& p, const KernelLabels& labels) { publish(p, labels); };
    return ctx;
  }

  bool expired() const { return Clock::now() >= deadline_; }

  void spawn(std::function<void()> fn) {
    if (parallel_) {
      group_.run(std::move(fn));
    } else {
      fn();
    }
  }

  void push(Problem p, bool reduced) {
    {
      std::lock_guard lock(queue_mutex_);
      if (config_.max_queued_problems != 0 && queue_.size() >= config_.max_queued_problems) {
        dropped_ = true;
        return;
      }
      const EdgeWeight lower = p.lowerBound();
      queue_.push_back({lower, next_seq_++, reduced, std::move(p)});
      std::push_heap(queue_.begin(), queue_.end(), below);
    }
    if (parallel_) {
      group_.run([this] {
        if (auto item = pop()) process(std::move(*item));
      });
    }
  }

  std::optional<QueueItem> pop() {
    std::lock_guard lock(queue_mutex_);
    if (queue_.empty()) return std::nullopt;
    std::pop_heap(queue_.begin(), queue_.end(), below);
    QueueItem item = std::move(queue_.back());
    queue_.pop_back();
    return item;
  }

  void count(std::size_t SolverStats::*field) {
    std::lock_guard lock(stats_mutex_);
    ++(stats_.*field);
  }

  void process(QueueItem item) {
    count(&SolverStats::problems);
    if (expired()) {
      timed_out_ = true;
      return;
    }
    Problem& p = item.problem;
    if (p.lowerBound() >= bound_.bestValue()) {
      count(&SolverStats::pruned);
      return;
    }
    if (!item.reduced) {
      auto ctx = context();
      const auto report = reduce::runReductionLoop(p, ctx, config_.reductions);
      if (report.timed_out) {
        timed_out_ = true;
        return;
      }
      if (report.solved) {
        publish(p, p.trivialLabels());
        return;
      }
      if (report.pruned) {
        count(&SolverStats::pruned);
        return;
      }
      std::lock_guard lock(stats_mutex_);
      stats_.peak_kernel_vertices = std::max(stats_.peak_kernel_vertices, p.graph().numVertices());
    }
    // The configured rules may leave terminal-terminal edges behind.
    reduce::deleteInterTerminalEdges(p);
    p.retireIsolatedTerminals();
    if (p.isSolved()) {
      publish(p, p.trivialLabels());
      return;
    }
    if (p.lowerBound() >= bound_.bestValue()) {
      count(&SolverStats::pruned);
      return;
    }
    if (p.graph().numVertices() * 2 < p.graph().slotCount()) p.compact();
    if (tryIlp(p)) return;

    const bool inexact = config_.mode == SolveMode::kInexact;
    if (inexact) {
      shrinkTerminalsInexact(p, config_.delta);
      if (p.isSolved()) {
        publish(p, p.trivialLabels());
        return;
      }
      if (p.lowerBound() >= bound_.bestValue()) return;
    }
    count(&SolverStats::branches);
    const EdgeWeight best = bound_.bestValue();
    std::vector<Problem> children;
    if (config_.branch_rule == BranchRule::kEdge) {
      children = branchEdgeFallback(p, best);
    } else {
      children = branchVertex(p, selectBranchVertex(p), best, {inexact, config_.beta});
    }
    for (auto& child : children) push(std::move(child), false);
  }

  bool tryIlp(const Problem& p) {
    if (!ilp_enabled_ || p.graph().numEdges() == 0 || p.graph().numEdges() >= config_.ilp_edge_limit) return false;
    double timeout = config_.ilp_timeout_seconds;
    if (deadline_ != Clock::time_point::max()) {
      timeout = std::min(timeout, std::chrono::duration<double>(deadline_ - Clock::now()).count());
    }
    count(&SolverStats::ilp_calls);
    const auto outcome = ilp::solveExternal(ilp::buildModel(p), config_.ilp, timeout);
    switch (outcome.status) {
      case ilp::IlpStatus::kSolved:
        count(&SolverStats::ilp_solved);
        publish(p, outcome.labels);
        return true;
      case ilp::IlpStatus::kTimedOut:
        count(&SolverStats::ilp_timeouts);
        return false;
      case ilp::IlpStatus::kUnavailable:
        ilp_enabled_ = false;
        return false;
    }
    return false;
  }

  void publish(const Problem& p, const KernelLabels& labels) { publishAssignment(projectSolution(p, labels), true); }

  void publishAssignment(Assignment a, bool refine_it) {
    const EdgeWeight value = cutValue(original_, a, terminals_);
    if (value >= bound_.bestValue() && !refine_it) return;
    const bool improved = bound_.tryImprove(value, a);
    if (improved && hook_) hook_(value, a);
    if (!improved || !refine_it || !config_.local_search) return;
    const std::uint64_t seed = config_.seed + refine_seq_.fetch_add(1);
    spawn([this, a = std::move(a), seed]() mutable {
      ls::RefineOptions options;
      options.seed = seed;
      options.deadline = deadline_;
      Assignment refined = ls::refine(original_, std::move(a), k_, fixed_, options);
      count(&SolverStats::refinements);
      publishAssignment(std::move(refined), false);
    });
  }

  const StaticGraph& original_;
  std::vector<VertexId> terminals_;
  const SolverConfig& config_;
  ImprovementHook hook_;
  Clock::time_point start_;
  Clock::time_point deadline_ = Clock::time_point::max();
  BoundState bound_;
  bool parallel_;
  int k_ = 0;
  std::vector<char> fixed_;

  std::mutex queue_mutex_;
  std::vector<QueueItem> queue_;
  std::uint64_t next_seq_ = 0;
  std::atomic<std::uint64_t> refine_seq_{0};
  std::atomic<bool> ilp_enabled_{false};
  std::atomic<bool> timed_out_{false};
  std::atomic<bool> dropped_{false};

  std::mutex stats_mutex_;
  SolverStats stats_;

  std::optional<tbb::task_arena> arena_;
  tbb::task_group group_;
};

void validateTerminals(VertexId n, std::span<const VertexId> terminals) {
  if (terminals.size() < 2) throw InvalidInput("need at least two terminals");
  std::vector<char> seen(n, 0);
  for (const VertexId t : terminals) {
    if (t >= n) throw InvalidInput("terminal " + std::to_string(t) + " out of range");
    if (seen[t]) throw InvalidInput("duplicate terminal " + std::to_string(t));
    seen[t] = 1;
  }
}

void accumulate(SolverStats& into, const SolverStats& s) {
  into.kernel_vertices += s.kernel_vertices;
  into.kernel_edges += s.kernel_edges;
  into.peak_kernel_vertices = std::max(into.peak_kernel_vertices, s.peak_kernel_vertices);
  into.root_lower_bound += s.root_lower_bound;
  for (std::size_t r = 0; r < kReductionRuleCount; ++r) into.root_report.per_rule[r] += s.root_report.per_rule[r];
  into.root_report.passes = std::max(into.root_report.passes, s.root_report.passes);
  into.problems += s.problems;
  into.branches += s.branches;
  into.pruned += s.pruned;
  into.ilp_calls += s.ilp_calls;
  into.ilp_solved += s.ilp_solved;
  into.ilp_timeouts += s.ilp_timeouts;
  into.refinements += s.refinements;
  into.timed_out = into.timed_out || s.timed_out;
}

}  // namespace

SolveResult solveProblem(const StaticGraph& original, std::span<const VertexId> terminals, Problem root,
                         const SolverConfig& config, const ImprovementHook& on_improve) {
  Engine engine(original, terminals, config, on_improve);
  return engine.run(std::move(root));
}

SolveResult solve(const StaticGraph& g, std::span<const VertexId> terminals, const SolverConfig& config) {
  const VertexId n = g.numVertices();
  validateTerminals(n, terminals);
  std::vector<VertexId> comp;
  const VertexId components = connectedComponents(g, comp);
  std::vector<std::vector<std::size_t>> terminals_in(components);
  for (std::size_t i = 0; i < terminals.size(); ++i) terminals_in[comp[terminals[i]]].push_back(i);

  if (components == 1) {
    return solveProblem(g, terminals, Problem(ContractableGraph(g), terminals), config);
  }

  // Components are independent. Each one with at least two terminals gets
  // its own search; the rest join their terminal (or terminal 0) for free.
  const auto start = Clock::now();
  BoundState global(start);
  Assignment full(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    const auto& inside = terminals_in[comp[v]];
    if (!inside.empty()) full[v] = static_cast<BlockId>(inside.front());
  }
  for (std::size_t i = 0; i < terminals.size(); ++i) full[terminals[i]] = static_cast<BlockId>(i);
  std::vector<EdgeWeight> part_value(components, 0);
  for (const auto& e : g.edges()) {
    if (full[e.u] != full[e.v]) part_value[comp[e.u]] += e.weight;
  }
  EdgeWeight total = 0;
  for (const EdgeWeight w : part_value) total += w;
  global.tryImprove(total, full);

  SolveResult result;
  result.optimal = true;
  result.stats.input_vertices = n;
  result.stats.input_edges = g.numEdges();
  std::mutex hook_mutex;
  for (VertexId c = 0; c < components; ++c) {
    if (terminals_in[c].size() < 2) continue;
    std::vector<VertexId> members;
    std::vector<VertexId> local(n, kInvalidVertex);
    for (VertexId v = 0; v < n; ++v) {
      if (comp[v] == c) {
        local[v] = static_cast<VertexId>(members.size());
        members.push_back(v);
      }
    }
    std::vector<WeightedEdge> edges;
    for (const auto& e : g.edges()) {
      if (comp[e.u] == c) edges.push_back({local[e.u], local[e.v], e.weight});
    }
    const auto sub = StaticGraph::fromEdgeList(static_cast<VertexId>(members.size()), edges);
    std::vector<VertexId> sub_terminals;
    for (const std::size_t i : terminals_in[c]) sub_terminals.push_back(local[terminals[i]]);

    SolverConfig sub_config = config;
    if (std::isfinite(config.time_limit_seconds)) {
      sub_config.time_limit_seconds =
          config.time_limit_seconds - std::chrono::duration<double>(Clock::now() - start).count();
    }
    auto hook = [&](EdgeWeight value, const Assignment& a) {
      std::lock_guard lock(hook_mutex);
      if (value >= part_value[c]) return;
      Assignment next = global.bestAssignment();
      for (std::size_t v = 0; v < members.size(); ++v) {
        next[members[v]] = static_cast<BlockId>(terminals_in[c][a[v]]);
      }
      if (global.tryImprove(global.bestValue() - part_value[c] + value, next)) part_value[c] = value;
    };
    const auto part =
        solveProblem(sub, sub_terminals, Problem(ContractableGraph(sub), sub_terminals), sub_config, hook);
    hook(part.value, part.assignment);
    result.optimal = result.optimal && part.optimal;
    accumulate(result.stats, part.stats);
  }
  result.assignment = global.bestAssignment();
  result.value = global.bestValue();
  result.events = global.events();
  result.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

std::string eventsCsv(std::span<const ProgressEvent> events) {
  std::ostringstream out;
  out << "time_seconds,best_value\n";
  for (const auto& e : events) out << e.seconds << ',' << e.best_value << '\n';
  return out.str();
}

}  // namespace mtcut
