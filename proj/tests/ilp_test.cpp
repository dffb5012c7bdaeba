#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>

#include "mtcut/ilp.hpp"
#include "oracle.hpp"

namespace mtcut {
namespace {

using namespace ilp;

// Minimal independent reader: counts rows in "Subject To" and the distinct
// variable names in "Binary".
struct LpShape {
  std::size_t rows = 0;
  std::set<std::string> binaries;
  std::set<std::string> referenced;
};

LpShape readShape(const std::string& text) {
  LpShape shape;
  std::istringstream in(text);
  std::string line;
  std::string section;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line[0] != ' ') {
      section = line;
      continue;
    }
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (section == "Subject To" && tok.back() == ':') {
        ++shape.rows;
        continue;
      }
      if (tok[0] == 'x' || tok[0] == 'z') {
        if (section == "Binary") {
          shape.binaries.insert(tok);
        } else {
          shape.referenced.insert(tok);
        }
      }
    }
  }
  return shape;
}

TEST(IlpModel, F1Structure) {
  const auto p = testing::fixtureF1().problem();
  const auto m = buildModel(p);
  EXPECT_EQ(m.vertices.size(), 3u);
  EXPECT_EQ(m.blocks(), 2u);
  EXPECT_EQ(m.edges.size(), 2u);
  const auto text = emitStandardForm(m);
  const auto shape = readShape(text);
  // One assignment row per vertex and two rows per edge and block.
  EXPECT_EQ(shape.rows, 3u + 2u * 2u * 2u);
  EXPECT_EQ(shape.binaries.size(), 3u * 2u + 2u);
  EXPECT_EQ(shape.referenced, shape.binaries);
  EXPECT_NE(text.find("x_1_0"), std::string::npos);
  EXPECT_NE(text.find("x_1_1"), std::string::npos);
}

TEST(IlpModel, RoundTripShapeOnCorpus) {
  for (const auto& inst : testing::oracleCorpus(50, 3)) {
    const auto m = buildModel(inst.problem());
    const auto text = emitStandardForm(m);
    EXPECT_EQ(text, emitStandardForm(buildModel(inst.problem())));
    const auto shape = readShape(text);
    const std::size_t k = inst.terminals.size();
    EXPECT_EQ(shape.rows, inst.n + 2 * k * inst.edges.size());
    EXPECT_EQ(shape.binaries.size(), inst.n * k + inst.edges.size());
    for (const auto& row : {std::string("Minimize"), std::string("Subject To"), std::string("Bounds"),
                            std::string("Binary"), std::string("End")}) {
      EXPECT_NE(text.find("\n" + row + "\n"), std::string::npos) << row;
    }
  }
}

TEST(IlpModel, RejectsEmptyModel) {
  const testing::Instance k2{"K2", 2, {{0, 1, 7}}, {0, 1}};
  auto p = k2.problem();
  p.deleteEdge(0, 1);
  EXPECT_THROW(buildModel(p), InvalidInput);
}

TEST(IlpModel, EncodeDecodeInverse) {
  std::mt19937_64 rng(61);
  for (const auto& inst : testing::oracleCorpus(50, 5)) {
    const auto p = inst.problem();
    const auto m = buildModel(p);
    KernelLabels labels(p.graph().slotCount());
    const auto k = static_cast<BlockId>(inst.terminals.size());
    for (auto& b : labels) b = static_cast<BlockId>(rng() % k);
    for (const auto& t : p.terminals()) labels[t.vertex] = t.index;
    const auto values = encode(m, labels);
    EXPECT_EQ(decode(m, values), labels);
    double objective = 0;
    for (std::size_t e = 0; e < m.edges.size(); ++e) objective += m.edges[e].weight * values.at(m.zName(e));
    EXPECT_EQ(static_cast<EdgeWeight>(objective), kernelCutValue(p, labels));
  }
}

TEST(IlpModel, DecodeRejectsAmbiguousVertex) {
  const auto m = buildModel(testing::fixtureF1().problem());
  VariableValues values;
  EXPECT_THROW(decode(m, values), InvalidInput);
}

TEST(SolveExternal, UnsetCommandIsUnavailable) {
  const auto m = buildModel(testing::fixtureF2().problem());
  IlpOptions opt;
  EXPECT_EQ(solveExternal(m, opt, 10).status, IlpStatus::kUnavailable);
}

TEST(SolveExternal, ZeroTimeoutTimesOut) {
  const auto m = buildModel(testing::fixtureF3().problem());
  IlpOptions opt;
  opt.command = "true";
  EXPECT_EQ(solveExternal(m, opt, 0).status, IlpStatus::kTimedOut);
}

TEST(SolveExternal, KillsSlowSolver) {
  const auto m = buildModel(testing::fixtureF3().problem());
  IlpOptions opt;
  opt.command = "sleep 30";
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(solveExternal(m, opt, 0.2).status, IlpStatus::kTimedOut);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST(SolveExternal, MalformedOutputIsUnavailable) {
  const auto m = buildModel(testing::fixtureF1().problem());
  IlpOptions opt;
  opt.command = "printf '# Status: optimal\\nnot-a-number x\\n' > {sol}";
  auto r = solveExternal(m, opt, 5);
  EXPECT_EQ(r.status, IlpStatus::kUnavailable);
  EXPECT_NE(r.diagnostic.find("malformed"), std::string::npos);

  opt.command = "exit 3";
  r = solveExternal(m, opt, 5);
  EXPECT_EQ(r.status, IlpStatus::kUnavailable);

  opt.command = "printf '# Status: time_limit\\n' > {sol}";
  EXPECT_EQ(solveExternal(m, opt, 5).status, IlpStatus::kTimedOut);
}

TEST(SolveExternal, ScriptedSolution) {
  // F1 with a in t1's block. The fake solver ignores the model.
  const auto m = buildModel(testing::fixtureF1().problem());
  IlpOptions opt;
  opt.command =
      "printf '# Status: optimal\\nx_0_0 1\\nx_0_1 0\\nx_1_0 1\\nx_1_1 0\\nx_2_0 0\\nx_2_1 1\\n' > {sol}";
  const auto r = solveExternal(m, opt, 5);
  ASSERT_EQ(r.status, IlpStatus::kSolved) << r.diagnostic;
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.labels, (KernelLabels{0, 0, 1}));
}

// Runs only when a real solver is configured.
TEST(SolveExternal, MatchesOracle) {
  const auto config = defaultSolverConfig();
  if (config.ilp.command.empty()) GTEST_SKIP() << "MTCUT_MILP_SOLVER not set";
  for (const auto& inst : testing::fixtures()) {
    auto p = inst.problem();
    if (p.graph().numEdges() == 0) continue;
    const auto r = solveExternal(buildModel(p), config.ilp, 30);
    ASSERT_EQ(r.status, IlpStatus::kSolved) << inst.name << ": " << r.diagnostic;
    EXPECT_EQ(r.value, testing::bruteForce(inst).value) << inst.name;
    EXPECT_EQ(cutValue(inst.graph(), projectSolution(p, r.labels), inst.terminals), r.value);
  }
}

}  // namespace
}  // namespace mtcut
