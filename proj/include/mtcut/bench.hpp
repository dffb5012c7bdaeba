#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtcut/config.hpp"
#include "mtcut/problem.hpp"
#include "mtcut/reductions.hpp"
#include "mtcut/solver.hpp"
#include "mtcut/static_graph.hpp"

namespace mtcut::bench {

/// METIS adjacency text. Vertex weights and sizes, when the format code
/// announces them, are read and discarded. Throws ParseError.
StaticGraph parseGraphFile(const std::string& text);
StaticGraph readGraphFile(const std::filesystem::path& path);
/// Always writes edge weights (format code 1).
std::string writeGraphFile(const StaticGraph& g);

/// rows x cols torus; weights uniform in [1, max_weight] (all 1 if max_weight is 1).
StaticGraph torusGraph(VertexId rows, VertexId cols, EdgeWeight max_weight = 1, std::uint64_t seed = 0);

/// Repeated farthest-vertex BFS from a seeded random start. Throws
/// InvalidInput when g is disconnected or k is outside [2, n].
std::vector<VertexId> generateTerminals(const StaticGraph& g, std::size_t k, std::uint64_t seed);

/// Claims floor(f n) further vertices by round-robin BFS around the
/// terminals, one vertex per turn, and contracts each block into its
/// terminal. The seed rotates which terminal moves first. Throws InvalidInput
/// when fewer than k vertices would remain unclaimed or f is outside [0, 1).
Problem growTerminalBlocks(const StaticGraph& g, std::span<const VertexId> terminals, double fraction,
                           std::uint64_t seed);

struct ProfilePoint {
  double tau = 1;
  double fraction = 0;
};

/// objectives[algorithm][instance]; nullopt is a missing result. Throws
/// InvalidInput when instance counts differ or an instance has no result.
using ResultTable = std::map<std::string, std::vector<std::optional<double>>>;
std::map<std::string, std::vector<ProfilePoint>> performanceProfile(const ResultTable& objectives,
                                                                    std::span<const double> taus);
std::string profileCsv(const std::map<std::string, std::vector<ProfilePoint>>& profiles);

/// Zero if any value is zero; NaN for an empty input.
double geometricMean(std::span<const double> values);

nlohmann::json reportJson(const reduce::ReductionReport& report);
nlohmann::json statsJson(const SolverStats& stats);

struct InstanceSpec {
  std::string name;
  std::string graph;      // METIS file; empty when a generator is used
  VertexId torus_rows = 0;  // generator: torus
  VertexId torus_cols = 0;
  EdgeWeight max_weight = 1;
  std::size_t k = 2;
  double preset_fraction = 0;
  std::vector<std::uint64_t> seeds{0};
};

struct AlgorithmSpec {
  std::string name;
  SolverConfig config;
};

struct ExperimentSpec {
  std::vector<InstanceSpec> instances;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<double> taus;
};

/// Parses the JSON experiment description. Relative graph paths are resolved
/// against base_dir. Throws InvalidInput on malformed specs.
ExperimentSpec parseExperimentSpec(const nlohmann::json& spec, const std::filesystem::path& base_dir);
SolverConfig parseAlgorithmConfig(const nlohmann::json& j);

struct ExperimentRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::optional<EdgeWeight> value;
  bool optimal = false;
  double seconds = 0;
  VertexId input_vertices = 0;
  VertexId kernel_vertices = 0;
  VertexId peak_kernel_vertices = 0;
  std::string error;  // non-empty on failure
  std::vector<ProgressEvent> events;
};

nlohmann::json recordJson(const ExperimentRecord& r);

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::map<std::string, double> geometric_mean;  // over successful runs
  std::map<std::string, std::size_t> optimal_count;
  std::map<std::string, std::vector<ProfilePoint>> profiles;
};

/// Runs every (instance, seed) against every algorithm in sequence. Failures
/// are recorded and the run continues. `on_record` sees each record as it is
/// produced.
ExperimentResult runExperiment(const ExperimentSpec& spec,
                               const std::function<void(const ExperimentRecord&)>& on_record = {});

/// Default tau grid: 1.00 to 2.00 in steps of 0.01.
std::vector<double> defaultTaus();

}  // namespace mtcut::bench
