#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtcut/config.hpp"
#include "mtcut/problem.hpp"

namespace mtcut::ilp {

/// Node-labeling formulation over the kernel of a Problem:
///   minimize   sum_e w(e) z_e
///   subject to z_e >= x_{u,b} - x_{v,b} and z_e >= x_{v,b} - x_{u,b}  (all e, b)
///              sum_b x_{v,b} = 1                                     (all v)
///              x_{t_b,b} = 1                                         (terminals)
/// Blocks are the active terminals; the objective offset is the deleted weight.
struct IlpModel {
  std::vector<VertexId> vertices;        // kernel slot per position
  std::vector<BlockId> block_labels;     // terminal index per block position
  std::vector<VertexId> terminal_pos;    // vertex position of block b's terminal
  std::vector<WeightedEdge> edges;       // endpoints are vertex positions
  std::vector<Terminal> retired;         // labeled directly when decoding
  VertexId slot_count = 0;
  EdgeWeight offset = 0;

  std::size_t blocks() const { return block_labels.size(); }
  std::string xName(std::size_t pos, std::size_t block) const;
  std::string zName(std::size_t edge) const;
};

/// Throws InvalidInput without edges or with fewer than two active terminals.
IlpModel buildModel(const Problem& p);

/// LP-format text; identical models give byte-identical output.
std::string emitStandardForm(const IlpModel& m);

using VariableValues = std::map<std::string, double>;

/// Variable values for a kernel labeling (inverse of decode).
VariableValues encode(const IlpModel& m, const KernelLabels& labels);
/// Throws InvalidInput unless every vertex has exactly one block set to one.
KernelLabels decode(const IlpModel& m, const VariableValues& values);

enum class IlpStatus { kSolved, kTimedOut, kUnavailable };

struct IlpOutcome {
  IlpStatus status = IlpStatus::kUnavailable;
  KernelLabels labels;  // set when solved
  EdgeWeight value = 0;  // kernel cut plus offset
  std::string diagnostic;
};

/// Parses a solution file: "# Status: <word>" and "# Objective value = v"
/// comment lines, then one "name value" pair per line.
struct SolutionFile {
  std::string status;
  VariableValues values;
};
SolutionFile parseSolutionFile(const std::string& text);

/// Writes the model, runs the configured command through /bin/sh with the
/// {lp}, {sol} and {timeout} placeholders substituted, kills the process group
/// at the timeout, and decodes the solution file.
IlpOutcome solveExternal(const IlpModel& m, const IlpOptions& options, double timeout_seconds);

}  // namespace mtcut::ilp
