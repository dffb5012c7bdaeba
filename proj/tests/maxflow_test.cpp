#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mtcut/maxflow.hpp"
#include "oracle.hpp"

namespace mtcut {
namespace {

using flow::FlowResult;
using flow::isolatingBounds;
using flow::isolatingCuts;
using flow::maxFlowST;

std::vector<VertexId> others(std::span<const VertexId> ts, std::size_t skip) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i != skip) out.push_back(ts[i]);
  }
  return out;
}

// Weight leaving `side` and whether it is a valid source side.
EdgeWeight boundary(std::span<const WeightedEdge> edges, const std::vector<char>& in) {
  EdgeWeight w = 0;
  for (const auto& e : edges) {
    if (in[e.u] != in[e.v]) w += e.weight;
  }
  return w;
}

TEST(MaxFlow, Fixtures) {
  const auto f1 = testing::fixtureF1();
  const std::vector<VertexId> t2{2};
  auto r = maxFlowST(f1.contractable(), 0, t2);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.source_side, (std::vector<VertexId>{0, 1}));

  const auto f2 = testing::fixtureF2();
  const std::vector<VertexId> t23{1, 2};
  r = maxFlowST(f2.contractable(), 0, t23);
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(r.source_side, (std::vector<VertexId>{0}));

  const auto f3 = testing::fixtureF3();
  const std::vector<VertexId> all{0, 1, 2};
  r = maxFlowST(f3.contractable(), 3, all);
  EXPECT_EQ(r.value, 5);
  EXPECT_EQ(r.source_side, (std::vector<VertexId>{3}));
}

TEST(MaxFlow, RejectsBadSinks) {
  const auto g = testing::fixtureF1().contractable();
  const std::vector<VertexId> none;
  EXPECT_THROW(maxFlowST(g, 0, none), InvalidInput);
  const std::vector<VertexId> self{0, 2};
  EXPECT_THROW(maxFlowST(g, 0, self), InvalidInput);
}

TEST(MaxFlow, DisconnectedSourceGetsItsComponent) {
  const std::vector<WeightedEdge> edges{{0, 1, 4}, {2, 3, 1}};
  const auto g = ContractableGraph::fromEdgeList(4, edges);
  const std::vector<VertexId> sinks{3};
  const auto r = maxFlowST(g, 0, sinks);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.source_side, (std::vector<VertexId>{0, 1}));
}

TEST(IsolatingCuts, Fixtures) {
  const auto f2 = testing::fixtureF2();
  auto cuts = isolatingCuts(f2.contractable(), f2.terminals);
  ASSERT_EQ(cuts.size(), 3u);
  for (const auto& c : cuts) EXPECT_EQ(c.value, 2);
  auto b = isolatingBounds(cuts);
  EXPECT_EQ(b.lower, 3);
  EXPECT_EQ(b.upper, 4);

  const auto f1 = testing::fixtureF1();
  cuts = isolatingCuts(f1.contractable(), f1.terminals);
  EXPECT_EQ(cuts[0].value, 1);
  EXPECT_EQ(cuts[1].value, 1);
  EXPECT_EQ(cuts[0].source_side, (std::vector<VertexId>{0, 1}));
  b = isolatingBounds(cuts);
  EXPECT_EQ(b.lower, 1);
  EXPECT_EQ(b.upper, 1);

  // t1's minimum isolating cut has weight 2 (cut c-t2 and c-t3), and the
  // largest minimum side takes c along.
  const auto f3 = testing::fixtureF3();
  cuts = isolatingCuts(f3.contractable(), f3.terminals);
  EXPECT_EQ(cuts[0].value, 2);
  EXPECT_EQ(cuts[0].source_side, (std::vector<VertexId>{0, 3}));
  EXPECT_EQ(cuts[1].value, 1);
  EXPECT_EQ(cuts[2].value, 1);
  b = isolatingBounds(cuts);
  EXPECT_EQ(b.lower, 2);
  EXPECT_EQ(b.upper, 2);
}

TEST(IsolatingCuts, ParallelMatchesSerial) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 20; ++round) {
    const auto inst = testing::randomInstance(rng, 4, 30, 80, 10);
    const auto g = inst.contractable();
    const auto a = isolatingCuts(g, inst.terminals, 1);
    const auto b = isolatingCuts(g, inst.terminals, 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].value, b[i].value);
      EXPECT_EQ(a[i].source_side, b[i].source_side);
    }
  }
}

// Exhaustive check on small graphs: the value is the minimum over all
// source sides and the returned side is the unique largest minimum one.
TEST(MaxFlow, MatchesExhaustiveCutEnumeration) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const VertexId n = std::uniform_int_distribution<VertexId>(3, 14)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(n - 1, 2 * n)(rng);
    auto inst = testing::randomGraph(rng, n, m, 6);
    const VertexId s = 0;
    std::vector<VertexId> sinks;
    for (VertexId v = 1; v < n; ++v) {
      if (rng() % 3 == 0) sinks.push_back(v);
    }
    if (sinks.empty()) sinks.push_back(n - 1);
    const auto r = maxFlowST(inst.contractable(), s, sinks);

    std::vector<char> is_sink(n, 0);
    for (const VertexId t : sinks) is_sink[t] = 1;
    std::vector<VertexId> free;
    for (VertexId v = 1; v < n; ++v) {
      if (!is_sink[v]) free.push_back(v);
    }
    EdgeWeight best = kInfiniteWeight;
    std::vector<std::vector<char>> minimal_sides;
    for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
      std::vector<char> in(n, 0);
      in[s] = 1;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (mask >> i & 1u) in[free[i]] = 1;
      }
      const EdgeWeight w = boundary(inst.edges, in);
      if (w < best) {
        best = w;
        minimal_sides.clear();
      }
      if (w == best) minimal_sides.push_back(in);
    }
    ASSERT_EQ(r.value, best);
    std::vector<char> in(n, 0);
    for (const VertexId v : r.source_side) in[v] = 1;
    ASSERT_TRUE(in[s]);
    for (const VertexId t : sinks) ASSERT_FALSE(in[t]);
    ASSERT_EQ(boundary(inst.edges, in), best);
    // The union of all minimum sides is itself minimum; ours equals it.
    std::vector<char> unite(n, 0);
    for (const auto& side : minimal_sides) {
      for (VertexId v = 0; v < n; ++v) unite[v] |= side[v];
    }
    ASSERT_EQ(in, unite);
  }
}

TEST(MaxFlow, InvariantUnderRelabeling) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 50; ++round) {
    const auto inst = testing::randomInstance(rng, 3, 25, 60, 9);
    std::vector<VertexId> perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<WeightedEdge> relabeled;
    for (const auto& e : inst.edges) relabeled.push_back({perm[e.u], perm[e.v], e.weight});
    const auto g1 = inst.contractable();
    const auto g2 = ContractableGraph::fromEdgeList(inst.n, relabeled);
    const auto sinks = others(inst.terminals, 0);
    std::vector<VertexId> sinks2;
    for (const VertexId t : sinks) sinks2.push_back(perm[t]);
    EXPECT_EQ(maxFlowST(g1, inst.terminals[0], sinks).value, maxFlowST(g2, perm[inst.terminals[0]], sinks2).value);
  }
}

}  // namespace
}  // namespace mtcut
