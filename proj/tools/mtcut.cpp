#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtcut/bench.hpp"
#include "mtcut/reductions.hpp"
#include "mtcut/solver.hpp"

namespace {

using nlohmann::json;
using namespace mtcut;

constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;

struct InstanceOptions {
  std::string graph;
  std::size_t k = 0;
  std::vector<VertexId> terminals;  // 0-based, overrides --k
  double preset_fraction = 0;
  std::uint64_t seed = 0;
};

void addInstanceOptions(CLI::App* cmd, InstanceOptions& o) {
  cmd->add_option("--graph", o.graph, "METIS graph file")->required();
  cmd->add_option("--k", o.k, "number of generated terminals");
  cmd->add_option("--terminals", o.terminals, "explicit 0-based terminal vertices")->delimiter(',');
  cmd->add_option("--preset-fraction", o.preset_fraction, "fraction of vertices grown into terminal blocks");
  cmd->add_option("--seed", o.seed, "seed for terminal generation and local search");
}

struct Instance {
  StaticGraph graph;
  std::vector<VertexId> terminals;
  Problem root;
};

Instance loadInstance(const InstanceOptions& o) {
  Instance inst;
  inst.graph = bench::readGraphFile(o.graph);
  if (!o.terminals.empty()) {
    inst.terminals = o.terminals;
  } else if (o.k >= 2) {
    inst.terminals = bench::generateTerminals(inst.graph, o.k, o.seed);
  } else {
    throw InvalidInput("either --k >= 2 or --terminals is required");
  }
  inst.root = bench::growTerminalBlocks(inst.graph, inst.terminals, o.preset_fraction, o.seed);
  return inst;
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int runSolve(const InstanceOptions& io, SolverConfig config, const std::string& mode, const std::string& branch,
             const std::string& output, const std::string& progress) {
  config.mode = mode == "inexact" ? SolveMode::kInexact : SolveMode::kExact;
  config.branch_rule = branch == "edge" ? BranchRule::kEdge : BranchRule::kVertex;
  config.seed = io.seed;
  const Instance inst = loadInstance(io);
  const SolveResult r = solveProblem(inst.graph, inst.terminals, inst.root, config);

  if (!output.empty()) {
    std::string text;
    for (const BlockId b : r.assignment) text += std::to_string(b) + '\n';
    writeFile(output, text);
  }
  if (!progress.empty()) writeFile(progress, eventsCsv(r.events));
  const json summary = {
      {"value", r.value},
      {"optimal", r.optimal},
      {"terminals", inst.terminals},
      {"stats", bench::statsJson(r.stats)},
  };
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int runKernelize(const InstanceOptions& io, const std::vector<std::string>& rules, int threads,
                 const std::string& output, const std::string& kernel_path) {
  Instance inst = loadInstance(io);
  Problem& p = inst.root;
  const SolverConfig defaults = defaultSolverConfig();
  std::vector<ReductionRule> order = defaults.reductions;
  if (!rules.empty()) {
    order.clear();
    for (const auto& name : rules) order.push_back(reductionRuleFromName(name));
  }

  // Everything not anchored goes to terminal 0: a feasible incumbent, so the
  // connectivity rule has a bound to work against.
  Assignment trivial = terminalAnchors(p);
  for (auto& b : trivial) {
    if (b == kNoBlock) b = 0;
  }
  BoundState bound;
  bound.tryImprove(cutValue(inst.graph, trivial, inst.terminals), trivial);

  reduce::ReductionContext ctx;
  ctx.bound = &bound;
  ctx.threads = threads;
  ctx.equal_neighborhood_limit = defaults.equal_neighborhood_limit;
  ctx.flow_vertices_per_kind = defaults.flow_vertices_per_kind;
  const auto report = reduce::runReductionLoop(p, ctx, order);

  p.compact();
  json out = bench::reportJson(report);
  out["deleted_weight"] = p.deletedWeight();
  out["lower_bound"] = p.lowerBound();
  out["upper_bound"] = bound.bestValue();
  json terms = json::array();
  for (const auto& t : p.terminals()) terms.push_back({{"index", t.index}, {"vertex", t.vertex}});
  out["kernel_terminals"] = terms;
  if (!kernel_path.empty()) {
    const auto edges = p.graph().edges();
    writeFile(kernel_path, bench::writeGraphFile(StaticGraph::fromEdgeList(p.graph().numVertices(), edges)));
  }
  if (output.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    writeFile(output, out.dump(2) + '\n');
  }
  return 0;
}

int runBench(const std::string& spec_path, const std::string& profile, const std::string& results) {
  std::ifstream in(spec_path);
  if (!in) throw InvalidInput("cannot open spec " + spec_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("spec: ") + e.what());
  }
  const auto spec = bench::parseExperimentSpec(j, std::filesystem::path(spec_path).parent_path());

  std::ofstream results_file;
  std::ostream* sink = &std::cout;
  if (!results.empty()) {
    results_file.open(results, std::ios::binary);
    if (!results_file) throw std::runtime_error("cannot write " + results);
    sink = &results_file;
  }
  const auto outcome = bench::runExperiment(spec, [&](const bench::ExperimentRecord& r) {
    *sink << bench::recordJson(r).dump() << '\n';
    sink->flush();
  });
  if (!profile.empty()) writeFile(profile, bench::profileCsv(outcome.profiles));
  for (const auto& [name, mean] : outcome.geometric_mean) {
    std::cerr << name << ": geometric mean " << mean << ", optimal " << outcome.optimal_count.at(name) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiterminal cut solver"};
  app.require_subcommand(1);

  InstanceOptions solve_io;
  SolverConfig config = defaultSolverConfig();
  std::string mode = "exact";
  std::string branch = "vertex";
  std::string output;
  std::string progress;
  bool no_local_search = false;
  auto* solve = app.add_subcommand("solve", "solve an instance");
  addInstanceOptions(solve, solve_io);
  solve->add_option("--mode", mode)->check(CLI::IsMember({"exact", "inexact"}));
  solve->add_option("--branch", branch)->check(CLI::IsMember({"vertex", "edge"}));
  solve->add_option("--threads", config.threads)->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", config.time_limit_seconds, "seconds");
  solve->add_option("--ilp-edge-limit", config.ilp_edge_limit);
  solve->add_option("--ilp-timeout", config.ilp_timeout_seconds, "seconds");
  solve->add_option("--ilp-command", config.ilp.command, "MILP command template, overrides MTCUT_MILP_SOLVER");
  solve->add_option("--delta", config.delta);
  solve->add_option("--beta", config.beta);
  solve->add_flag("--no-local-search", no_local_search);
  solve->add_option("--output", output, "assignment file, one block per line");
  solve->add_option("--progress", progress, "CSV of improvements over time");

  InstanceOptions kern_io;
  std::vector<std::string> rules;
  int kern_threads = 1;
  std::string kern_output;
  std::string kernel_path;
  auto* kernelize = app.add_subcommand("kernelize", "apply the reductions and report");
  addInstanceOptions(kernelize, kern_io);
  kernelize->add_option("--reductions", rules, "rule names in order")->delimiter(',');
  kernelize->add_option("--threads", kern_threads)->check(CLI::PositiveNumber);
  kernelize->add_option("--output", kern_output, "report file (default stdout)");
  kernelize->add_option("--kernel", kernel_path, "write the kernel graph here");

  std::string spec_path;
  std::string profile;
  std::string results;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment spec");
  bench_cmd->add_option("--spec", spec_path)->required();
  bench_cmd->add_option("--profile", profile, "performance profile CSV");
  bench_cmd->add_option("--results", results, "JSONL results (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (solve->parsed()) {
      config.local_search = !no_local_search;
      return runSolve(solve_io, config, mode, branch, output, progress);
    }
    if (kernelize->parsed()) return runKernelize(kern_io, rules, kern_threads, kern_output, kernel_path);
    return runBench(spec_path, profile, results);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvalidInput& e) {
    std::cerr << "infeasible input: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InvalidOperation& e) {
    std::cerr << "infeasible input: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
