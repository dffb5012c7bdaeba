#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtcut/bench.hpp"

namespace mtcut::bench {

using nlohmann::json;

std::map<std::string, std::vector<ProfilePoint>> performanceProfile(const ResultTable& objectives,
                                                                    std::span<const double> taus) {
  std::map<std::string, std::vector<ProfilePoint>> out;
  if (objectives.empty()) return out;
  const std::size_t instances = objectives.begin()->second.size();
  for (const auto& [name, row] : objectives) {
    if (row.size() != instances) throw InvalidInput("algorithm '" + name + "' has a different instance count");
  }
  std::vector<double> sorted(taus.begin(), taus.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front() < 1) throw InvalidInput("tau must be at least 1");

  std::vector<double> best(instances, std::numeric_limits<double>::infinity());
  for (const auto& [name, row] : objectives) {
    for (std::size_t i = 0; i < instances; ++i) {
      if (row[i]) best[i] = std::min(best[i], *row[i]);
    }
  }
  for (std::size_t i = 0; i < instances; ++i) {
    if (!std::isfinite(best[i])) throw InvalidInput("instance " + std::to_string(i) + " has no finite result");
  }
  for (const auto& [name, row] : objectives) {
    auto& points = out[name];
    for (const double tau : sorted) {
      std::size_t within = 0;
      for (std::size_t i = 0; i < instances; ++i) {
        // Relative slack absorbs the rounding in tau * best.
        if (row[i] && *row[i] <= tau * best[i] * (1 + 1e-12)) ++within;
      }
      points.push_back({tau, instances == 0 ? 1.0 : static_cast<double>(within) / static_cast<double>(instances)});
    }
  }
  return out;
}

std::string profileCsv(const std::map<std::string, std::vector<ProfilePoint>>& profiles) {
  std::ostringstream out;
  out.precision(10);
  out << "algorithm,tau,fraction\n";
  for (const auto& [name, points] : profiles) {
    for (const auto& p : points) out << name << ',' << p.tau << ',' << p.fraction << '\n';
  }
  return out.str();
}

double geometricMean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double log_sum = 0;
  for (const double v : values) {
    if (v < 0) throw InvalidInput("geometric mean of a negative value");
    if (v == 0) return 0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::vector<double> defaultTaus() {
  std::vector<double> taus;
  for (int i = 0; i <= 100; ++i) taus.push_back(1.0 + i / 100.0);
  return taus;
}

json reportJson(const reduce::ReductionReport& report) {
  json rules = json::object();
  for (std::size_t i = 0; i < kReductionRuleCount; ++i) {
    const auto& o = report.per_rule[i];
    rules[reductionRuleName(static_cast<ReductionRule>(i))] = {{"contracted", o.contracted}, {"deleted", o.deleted}};
  }
  return {
      {"vertices_before", report.vertices_before},
      {"vertices_after", report.vertices_after},
      {"edges_before", report.edges_before},
      {"edges_after", report.edges_after},
      {"passes", report.passes},
      {"fixpoint", report.fixpoint},
      {"solved", report.solved},
      {"pruned", report.pruned},
      {"timed_out", report.timed_out},
      {"rules", rules},
  };
}

json statsJson(const SolverStats& s) {
  return {
      {"input_vertices", s.input_vertices},
      {"input_edges", s.input_edges},
      {"kernel_vertices", s.kernel_vertices},
      {"kernel_edges", s.kernel_edges},
      {"peak_kernel_vertices", s.peak_kernel_vertices},
      {"root_lower_bound", s.root_lower_bound},
      {"problems", s.problems},
      {"branches", s.branches},
      {"pruned", s.pruned},
      {"ilp_calls", s.ilp_calls},
      {"ilp_solved", s.ilp_solved},
      {"ilp_timeouts", s.ilp_timeouts},
      {"refinements", s.refinements},
      {"timed_out", s.timed_out},
      {"seconds", s.seconds},
      {"root_reduction", reportJson(s.root_report)},
  };
}

namespace {

template <typename T>
T field(const json& j, const char* key, const char* context) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(context) + ": bad or missing '" + key + "': " + e.what());
  }
}

}  // namespace

SolverConfig parseAlgorithmConfig(const json& j) {
  if (!j.is_object()) throw InvalidInput("algorithm must be an object");
  SolverConfig c = defaultSolverConfig();
  for (const auto& [key, value] : j.items()) {
    const char* ctx = "algorithm";
    if (key == "name") continue;
    if (key == "mode") {
      const auto m = field<std::string>(j, "mode", ctx);
      if (m == "exact") {
        c.mode = SolveMode::kExact;
      } else if (m == "inexact") {
        c.mode = SolveMode::kInexact;
      } else {
        throw InvalidInput("unknown mode '" + m + "'");
      }
    } else if (key == "branch") {
      const auto b = field<std::string>(j, "branch", ctx);
      if (b == "vertex") {
        c.branch_rule = BranchRule::kVertex;
      } else if (b == "edge") {
        c.branch_rule = BranchRule::kEdge;
      } else {
        throw InvalidInput("unknown branch rule '" + b + "'");
      }
    } else if (key == "time_limit") {
      c.time_limit_seconds = field<double>(j, "time_limit", ctx);
    } else if (key == "threads") {
      c.threads = field<int>(j, "threads", ctx);
    } else if (key == "ilp_edge_limit") {
      c.ilp_edge_limit = field<std::size_t>(j, "ilp_edge_limit", ctx);
    } else if (key == "ilp_timeout") {
      c.ilp_timeout_seconds = field<double>(j, "ilp_timeout", ctx);
    } else if (key == "ilp_command") {
      c.ilp.command = field<std::string>(j, "ilp_command", ctx);
    } else if (key == "delta") {
      c.delta = field<double>(j, "delta", ctx);
    } else if (key == "beta") {
      c.beta = field<int>(j, "beta", ctx);
    } else if (key == "local_search") {
      c.local_search = field<bool>(j, "local_search", ctx);
    } else if (key == "equal_neighborhood_limit") {
      c.equal_neighborhood_limit = field<std::size_t>(j, "equal_neighborhood_limit", ctx);
    } else if (key == "flow_vertices_per_kind") {
      c.flow_vertices_per_kind = field<std::size_t>(j, "flow_vertices_per_kind", ctx);
    } else if (key == "max_queued_problems") {
      c.max_queued_problems = field<std::size_t>(j, "max_queued_problems", ctx);
    } else if (key == "reductions") {
      c.reductions.clear();
      for (const auto& name : field<std::vector<std::string>>(j, "reductions", ctx)) {
        c.reductions.push_back(reductionRuleFromName(name));
      }
    } else {
      throw InvalidInput("unknown algorithm option '" + key + "'");
    }
  }
  if (c.threads < 1) throw InvalidInput("threads must be at least 1");
  return c;
}

ExperimentSpec parseExperimentSpec(const json& spec, const std::filesystem::path& base_dir) {
  if (!spec.is_object()) throw InvalidInput("experiment spec must be an object");
  ExperimentSpec out;
  if (!spec.contains("instances") || !spec["instances"].is_array()) throw InvalidInput("spec needs 'instances'");
  if (!spec.contains("algorithms") || !spec["algorithms"].is_array()) throw InvalidInput("spec needs 'algorithms'");

  for (const auto& j : spec["instances"]) {
    InstanceSpec inst;
    const char* ctx = "instance";
    if (j.contains("graph")) {
      const std::filesystem::path path(field<std::string>(j, "graph", ctx));
      inst.graph = (path.is_absolute() ? path : base_dir / path).string();
      inst.name = path.stem().string();
    } else if (j.contains("torus")) {
      const auto dims = field<std::vector<VertexId>>(j, "torus", ctx);
      if (dims.size() != 2) throw InvalidInput("torus needs [rows, cols]");
      inst.torus_rows = dims[0];
      inst.torus_cols = dims[1];
      inst.name = "torus-" + std::to_string(dims[0]) + "x" + std::to_string(dims[1]);
    } else {
      throw InvalidInput("instance needs 'graph' or 'torus'");
    }
    if (j.contains("max_weight")) inst.max_weight = field<EdgeWeight>(j, "max_weight", ctx);
    inst.k = field<std::size_t>(j, "k", ctx);
    if (j.contains("preset_fraction")) inst.preset_fraction = field<double>(j, "preset_fraction", ctx);
    if (j.contains("seeds")) inst.seeds = field<std::vector<std::uint64_t>>(j, "seeds", ctx);
    if (j.contains("name")) inst.name = field<std::string>(j, "name", ctx);
    inst.name += "-k" + std::to_string(inst.k);
    out.instances.push_back(std::move(inst));
  }
  for (const auto& j : spec["algorithms"]) {
    AlgorithmSpec alg;
    alg.name = field<std::string>(j, "name", "algorithm");
    alg.config = parseAlgorithmConfig(j);
    out.algorithms.push_back(std::move(alg));
  }
  out.taus = spec.contains("taus") ? field<std::vector<double>>(spec, "taus", "spec") : defaultTaus();
  return out;
}

json recordJson(const ExperimentRecord& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back({e.seconds, e.best_value});
  json j = {
      {"instance", r.instance},
      {"seed", r.seed},
      {"algorithm", r.algorithm},
      {"value", r.value ? json(*r.value) : json(nullptr)},
      {"optimal", r.optimal},
      {"seconds", r.seconds},
      {"input_vertices", r.input_vertices},
      {"kernel_vertices", r.kernel_vertices},
      {"peak_kernel_vertices", r.peak_kernel_vertices},
      {"events", events},
  };
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ExperimentResult runExperiment(const ExperimentSpec& spec,
                               const std::function<void(const ExperimentRecord&)>& on_record) {
  ExperimentResult result;
  ResultTable table;
  for (const auto& alg : spec.algorithms) table[alg.name];

  auto emit = [&](ExperimentRecord r) {
    if (on_record) on_record(r);
    result.records.push_back(std::move(r));
  };

  for (const auto& inst : spec.instances) {
    std::optional<StaticGraph> graph;
    std::string load_error;
    try {
      graph = inst.graph.empty() ? torusGraph(inst.torus_rows, inst.torus_cols, inst.max_weight, 0)
                                 : readGraphFile(inst.graph);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const std::uint64_t seed : inst.seeds) {
      std::vector<VertexId> terminals;
      std::optional<Problem> root;
      std::string error = load_error;
      if (error.empty()) {
        try {
          terminals = generateTerminals(*graph, inst.k, seed);
          root = growTerminalBlocks(*graph, terminals, inst.preset_fraction, seed);
        } catch (const std::exception& e) {
          error = e.what();
        }
      }
      bool any = false;
      std::map<std::string, std::optional<double>> row;
      for (const auto& alg : spec.algorithms) {
        ExperimentRecord r;
        r.instance = inst.name;
        r.seed = seed;
        r.algorithm = alg.name;
        r.error = error;
        if (error.empty()) {
          try {
            SolverConfig config = alg.config;
            config.seed = seed;
            const SolveResult s = solveProblem(*graph, terminals, *root, config);
            if (s.value != kInfiniteWeight) r.value = s.value;
            r.optimal = s.optimal;
            r.seconds = s.stats.seconds;
            r.input_vertices = graph->numVertices();
            r.kernel_vertices = s.stats.kernel_vertices;
            r.peak_kernel_vertices = s.stats.peak_kernel_vertices;
            r.events = s.events;
          } catch (const std::exception& e) {
            r.error = e.what();
          }
        }
        if (r.value) {
          row[alg.name] = static_cast<double>(*r.value);
          any = true;
          if (r.optimal) ++result.optimal_count[alg.name];
        }
        emit(std::move(r));
      }
      // Instances without any result cannot be normalized and are left out.
      if (!any) continue;
      for (const auto& alg : spec.algorithms) table[alg.name].push_back(row[alg.name]);
    }
  }

  for (const auto& alg : spec.algorithms) {
    std::vector<double> values;
    for (const auto& r : result.records) {
      if (r.algorithm == alg.name && r.value) values.push_back(static_cast<double>(*r.value));
    }
    result.geometric_mean[alg.name] = geometricMean(values);
    result.optimal_count.try_emplace(alg.name, 0);
  }
  result.profiles = performanceProfile(table, spec.taus);
  return result;
}

}  // namespace mtcut::bench
