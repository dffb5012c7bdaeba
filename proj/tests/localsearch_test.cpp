#include <gtest/gtest.h>

#include <random>

#include "mtcut/localsearch.hpp"
#include "mtcut/maxflow.hpp"
#include "oracle.hpp"

namespace mtcut {
namespace {

using testing::bruteForce;
using testing::Instance;

Assignment randomStart(std::mt19937_64& rng, const Instance& inst) {
  const int k = static_cast<int>(inst.terminals.size());
  Assignment a(inst.n);
  for (auto& b : a) b = static_cast<BlockId>(rng() % k);
  for (std::size_t i = 0; i < inst.terminals.size(); ++i) a[inst.terminals[i]] = static_cast<BlockId>(i);
  return a;
}

TEST(GainTable, IncrementalMatchesRecompute) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 50; ++round) {
    const auto inst = testing::randomInstance(rng, 4, 30, 90, 10);
    const auto g = inst.graph();
    ls::GainTable table(g, randomStart(rng, inst), 4);
    for (int step = 0; step < 100; ++step) {
      const VertexId v = static_cast<VertexId>(rng() % inst.n);
      table.move(v, static_cast<BlockId>(rng() % 4));
      ASSERT_TRUE(table.consistent());
      const auto fresh = ls::GainTable(g, table.assignment(), 4);
      ASSERT_EQ(table.gain(v).value, fresh.gain(v).value);
      ASSERT_EQ(table.cut(), cutValueUnchecked(g, table.assignment()));
    }
  }
}

TEST(KlPass, MovesStarCenter) {
  const auto f3 = testing::fixtureF3();
  const auto g = f3.graph();
  Assignment a{0, 1, 2, 1};
  EXPECT_EQ(cutValue(g, a, f3.terminals), 4);
  ls::GainTable table(g, a, 3);
  EXPECT_EQ(table.gain(3).block, 0);
  EXPECT_EQ(table.gain(3).value, 2);
  const auto mask = ls::terminalMask(f3.n, f3.terminals);
  EXPECT_TRUE(ls::klPass(g, a, 3, mask));
  EXPECT_EQ(a[3], 0);
  EXPECT_EQ(cutValue(g, a, f3.terminals), 2);
}

TEST(KlPass, PairMove) {
  // u = 2, v = 3 sit in block 1 with t2. Single gains are 2 - (3 + 2) = -3
  // and the pair test -3 - 3 + 4 = -2 fails, so nothing moves.
  const Instance inst{"pair", 4, {{0, 2, 2}, {0, 3, 2}, {2, 3, 2}, {1, 2, 3}, {1, 3, 3}, {0, 1, 1}}, {0, 1}};
  const auto g = inst.graph();
  Assignment a{0, 1, 1, 1};
  const auto mask = ls::terminalMask(inst.n, inst.terminals);
  EXPECT_FALSE(ls::klPass(g, a, 2, mask));

  const Instance coupled{"coupled", 4, {{0, 2, 3}, {0, 3, 3}, {2, 3, 2}, {1, 2, 2}, {1, 3, 2}}, {0, 1}};
  const auto h = coupled.graph();
  // Single gains: 3 - (2 + 2) = -1 each; pair: -1 - 1 + 4 = 2 > 0.
  Assignment b{0, 1, 1, 1};
  ls::GainTable table(h, b, 2);
  EXPECT_EQ(table.gain(2).value, -1);
  EXPECT_EQ(table.gain(3).value, -1);
  EXPECT_TRUE(ls::klPass(h, b, 2, mask));
  EXPECT_EQ(b, (Assignment{0, 1, 0, 0}));
  EXPECT_EQ(cutValue(h, b, coupled.terminals), 4);
}

TEST(PairwiseFlow, ReachesInducedMinimum) {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 200; ++round) {
    const auto inst = testing::randomInstance(rng, 3);
    const auto g = inst.graph();
    Assignment a = randomStart(rng, inst);
    const auto mask = ls::terminalMask(inst.n, inst.terminals);
    const EdgeWeight before = cutValue(g, a, inst.terminals);
    // The best i-j boundary on the induced subgraph, by flow oracle.
    std::vector<VertexId> local(inst.n, kInvalidVertex);
    VertexId m = 0;
    for (VertexId v = 0; v < inst.n; ++v) {
      if (a[v] == 0 || a[v] == 1) local[v] = m++;
    }
    std::vector<WeightedEdge> induced;
    EdgeWeight between = 0;
    for (const auto& e : inst.edges) {
      if (local[e.u] == kInvalidVertex || local[e.v] == kInvalidVertex) continue;
      induced.push_back({local[e.u], local[e.v], e.weight});
      if (a[e.u] != a[e.v]) between += e.weight;
    }
    const EdgeWeight best = testing::localConnectivity(m, induced, local[inst.terminals[0]], local[inst.terminals[1]]);
    const bool changed = ls::pairwiseFlowRefine(g, a, 0, 1, mask);
    const EdgeWeight after = cutValue(g, a, inst.terminals);
    EXPECT_EQ(changed, best < between);
    EXPECT_EQ(before - after, between - best);
  }
}

TEST(PairwiseFlow, SkipsNonAdjacentBlocks) {
  const Instance inst{"apart", 4, {{0, 3, 1}, {3, 1, 1}, {2, 3, 1}}, {0, 1, 2}};
  const auto g = inst.graph();
  Assignment a{0, 1, 2, 2};
  const auto mask = ls::terminalMask(inst.n, inst.terminals);
  EXPECT_FALSE(ls::pairwiseFlowRefine(g, a, 0, 1, mask));
  EXPECT_EQ(a, (Assignment{0, 1, 2, 2}));
}

TEST(Refine, MonotoneAndFeasible) {
  std::mt19937_64 rng(47);
  const auto corpus = testing::oracleCorpus(200, 99);
  for (int start = 0; start < 2000; ++start) {
    const auto& inst = corpus[start % corpus.size()];
    const auto g = inst.graph();
    const int k = static_cast<int>(inst.terminals.size());
    const Assignment a = randomStart(rng, inst);
    const auto mask = ls::terminalMask(inst.n, inst.terminals);
    ls::RefineOptions opt;
    opt.seed = static_cast<std::uint64_t>(start);
    const Assignment b = ls::refine(g, a, k, mask, opt);
    ASSERT_LE(cutValue(g, b, inst.terminals), cutValue(g, a, inst.terminals));
  }
}

TEST(Refine, TwoTerminalsReachMaxFlow) {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 100; ++round) {
    const auto inst = testing::randomInstance(rng, 2, 20, 50, 10);
    const auto g = inst.graph();
    const auto mask = ls::terminalMask(inst.n, inst.terminals);
    const Assignment b = ls::refine(g, randomStart(rng, inst), 2, mask);
    EXPECT_EQ(cutValue(g, b, inst.terminals),
              testing::localConnectivity(inst.n, inst.edges, inst.terminals[0], inst.terminals[1]));
  }
}

TEST(Refine, OptimalStaysOptimal) {
  for (const auto& inst : testing::oracleCorpus(100, 7)) {
    const auto g = inst.graph();
    const auto opt = bruteForce(inst);
    const auto mask = ls::terminalMask(inst.n, inst.terminals);
    const auto b = ls::refine(g, opt.assignment, static_cast<int>(inst.terminals.size()), mask);
    EXPECT_EQ(cutValue(g, b, inst.terminals), opt.value);
  }
}

}  // namespace
}  // namespace mtcut
