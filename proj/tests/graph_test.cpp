#include <gtest/gtest.h>

#include <random>

#include "mtcut/problem.hpp"
#include "mtcut/static_graph.hpp"
#include "oracle.hpp"

namespace mtcut {
namespace {

using testing::fixtureF1;
using testing::fixtureF2;
using testing::fixtureF3;
using testing::fixtureF4;
using testing::fixtureF5;
using testing::Instance;

TEST(ContractableGraph, BuildsFromEdgeList) {
  const auto g = fixtureF1().contractable();
  EXPECT_EQ(g.numVertices(), 3u);
  EXPECT_EQ(g.numEdges(), 2u);
  EXPECT_EQ(g.weightedDegree(1), 3);
  const auto f2 = fixtureF2().contractable();
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(f2.weightedDegree(v), 2);
}

TEST(ContractableGraph, MergesDuplicates) {
  const std::vector<WeightedEdge> edges{{0, 1, 1}, {1, 0, 2}};
  const auto g = ContractableGraph::fromEdgeList(2, edges);
  EXPECT_EQ(g.numEdges(), 1u);
  EXPECT_EQ(g.edgeWeight(0, 1), 3);
}

TEST(ContractableGraph, RejectsBadInput) {
  const std::vector<WeightedEdge> loop{{1, 1, 1}};
  EXPECT_THROW(ContractableGraph::fromEdgeList(2, loop), InvalidInput);
  const std::vector<WeightedEdge> zero{{0, 1, 0}};
  EXPECT_THROW(ContractableGraph::fromEdgeList(2, zero), InvalidInput);
  const std::vector<WeightedEdge> negative{{0, 1, -3}};
  EXPECT_THROW(ContractableGraph::fromEdgeList(2, negative), InvalidInput);
  const std::vector<WeightedEdge> range{{0, 5, 1}};
  EXPECT_THROW(ContractableGraph::fromEdgeList(2, range), InvalidInput);
}

TEST(ContractableGraph, ContractEdge) {
  auto g = fixtureF1().contractable();
  g.contractEdge(0, 1);
  EXPECT_EQ(g.numVertices(), 2u);
  EXPECT_EQ(g.numEdges(), 1u);
  EXPECT_EQ(g.edgeWeight(0, 2), 1);
  EXPECT_EQ(g.currentVertex(1), 0u);
  EXPECT_TRUE(g.checkInvariants());

  auto tri = fixtureF2().contractable();
  tri.contractEdge(1, 2);
  EXPECT_EQ(tri.numVertices(), 2u);
  EXPECT_EQ(tri.edgeWeight(0, 1), 2);
  EXPECT_TRUE(tri.checkInvariants());
}

TEST(ContractableGraph, ContractMissingEdgeThrows) {
  auto g = fixtureF1().contractable();
  EXPECT_THROW(g.contractEdge(0, 2), NotFound);
}

TEST(ContractableGraph, DeleteEdge) {
  auto g = fixtureF1().contractable();
  EXPECT_EQ(g.deleteEdge(1, 2), 1);
  EXPECT_EQ(g.numEdges(), 1u);
  EXPECT_EQ(g.degree(2), 0u);
  EXPECT_THROW(g.deleteEdge(1, 2), NotFound);
  EXPECT_TRUE(g.checkInvariants());
}

TEST(ContractableGraph, RandomOperationsKeepInvariants) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    auto inst = testing::randomGraph(rng, 20, 50, 9);
    auto g = inst.contractable();
    while (g.numEdges() > 0) {
      const auto edges = g.edges();
      const auto& e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
      if (rng() % 3 == 0) {
        g.deleteEdge(e.u, e.v);
      } else {
        g.contractEdge(e.u, e.v);
      }
      ASSERT_TRUE(g.checkInvariants());
      if (rng() % 5 == 0) {
        g.compact();
        ASSERT_TRUE(g.checkInvariants());
      }
    }
    for (VertexId o = 0; o < inst.n; ++o) EXPECT_TRUE(g.isAlive(g.currentVertex(o)));
  }
}

TEST(Problem, RejectsBadTerminals) {
  const auto inst = fixtureF1();
  const std::vector<VertexId> one{0};
  EXPECT_THROW(Problem(inst.contractable(), one), InvalidInput);
  const std::vector<VertexId> dup{0, 0};
  EXPECT_THROW(Problem(inst.contractable(), dup), InvalidInput);
  const std::vector<VertexId> range{0, 9};
  EXPECT_THROW(Problem(inst.contractable(), range), InvalidInput);
}

TEST(Problem, RefusesToMergeTerminals) {
  auto p = fixtureF2().problem();
  EXPECT_THROW(p.contractEdge(0, 1), InvalidOperation);
  const std::vector<VertexId> set{0, 1};
  EXPECT_THROW(p.contractVertexSet(set, 0), InvalidOperation);
}

TEST(Problem, ContractVertexSet) {
  auto p = fixtureF1().problem();
  const std::vector<VertexId> set{0, 1};
  p.contractVertexSet(set, 0);
  EXPECT_EQ(p.graph().numVertices(), 2u);
  EXPECT_EQ(p.graph().edgeWeight(0, 2), 1);

  // F4: absorbing the pendant cycle leaves the path t1 - x - t2.
  auto f4 = fixtureF4().problem();
  const std::vector<VertexId> cycle{1, 3, 4};
  f4.contractVertexSet(cycle, 1);
  EXPECT_EQ(f4.graph().numVertices(), 3u);
  EXPECT_EQ(f4.graph().numEdges(), 2u);
  EXPECT_EQ(f4.graph().edgeWeight(0, 1), 1);
  EXPECT_EQ(f4.graph().edgeWeight(1, 2), 1);

  // F5: merging u and v (not adjacent) gives t1 -(2)- uv -(2)- t2.
  auto f5 = fixtureF5().problem();
  const std::vector<VertexId> twins{2, 3};
  f5.contractVertexSet(twins, 2);
  EXPECT_EQ(f5.graph().numVertices(), 3u);
  EXPECT_EQ(f5.graph().edgeWeight(0, 2), 2);
  EXPECT_EQ(f5.graph().edgeWeight(1, 2), 2);

  auto single = fixtureF3().problem();
  const std::vector<VertexId> self{3};
  single.contractVertexSet(self, 3);
  EXPECT_EQ(single.graph().numVertices(), 4u);
}

TEST(Problem, TerminalStatusFollowsContraction) {
  auto p = fixtureF1().problem();
  p.contractEdge(1, 0);  // the terminal slot dies, the survivor becomes the terminal
  EXPECT_TRUE(p.isTerminal(1));
  EXPECT_EQ(p.terminals()[0].vertex, 1u);
  EXPECT_EQ(p.terminals()[0].index, 0);
}

TEST(Problem, DeleteChargesWeight) {
  const Instance k2{"K2", 2, {{0, 1, 7}}, {0, 1}};
  auto p = k2.problem();
  p.deleteEdge(0, 1);
  EXPECT_EQ(p.deletedWeight(), 7);
  EXPECT_EQ(p.lowerBound(), 7);
  EXPECT_EQ(p.graph().numEdges(), 0u);
  EXPECT_TRUE(p.isSolved());
}

TEST(CutValue, Fixtures) {
  const auto f1 = fixtureF1();
  EXPECT_EQ(cutValue(f1.graph(), {0, 0, 1}, f1.terminals), 1);
  const auto f2 = fixtureF2();
  EXPECT_EQ(cutValue(f2.graph(), {0, 1, 2}, f2.terminals), 3);
  const auto f3 = fixtureF3();
  EXPECT_EQ(cutValue(f3.graph(), {0, 1, 2, 0}, f3.terminals), 2);
  EXPECT_EQ(cutValue(f3.graph(), {0, 1, 2, 1}, f3.terminals), 4);
  EXPECT_EQ(cutValue(f3.graph(), {0, 1, 2, 2}, f3.terminals), 4);
}

TEST(CutValue, RejectsMislabeledTerminal) {
  const auto f1 = fixtureF1();
  EXPECT_THROW(cutValue(f1.graph(), {1, 0, 1}, f1.terminals), InfeasibleAssignment);
  EXPECT_THROW(cutValue(f1.graph(), {0, kNoBlock, 1}, f1.terminals), InfeasibleAssignment);
}

TEST(ProjectSolution, ComposesMapping) {
  auto p = fixtureF1().problem();
  p.contractEdge(0, 1);
  KernelLabels labels(p.graph().slotCount(), kNoBlock);
  labels[0] = 0;
  labels[2] = 1;
  EXPECT_EQ(projectSolution(p, labels), (Assignment{0, 0, 1}));

  auto identity = fixtureF3().problem();
  const KernelLabels direct{0, 1, 2, 0};
  EXPECT_EQ(projectSolution(identity, direct), (Assignment{0, 1, 2, 0}));
}

TEST(ProjectSolution, Errors) {
  auto p = fixtureF1().problem();
  const KernelLabels missing{0, kNoBlock, 1};
  EXPECT_THROW(projectSolution(p, missing), IncompleteSolution);
  const KernelLabels wrong{1, 1, 1};
  EXPECT_THROW(projectSolution(p, wrong), InfeasibleAssignment);
}

TEST(ProjectSolution, ContractionPreservesCutValue) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto inst = testing::randomInstance(rng, 3);
    const auto g = inst.graph();
    auto p = inst.problem();
    for (int step = 0; step < 4; ++step) {
      const auto edges = p.graph().edges();
      std::vector<WeightedEdge> allowed;
      for (const auto& e : edges) {
        if (!(p.isTerminal(e.u) && p.isTerminal(e.v))) allowed.push_back(e);
      }
      if (allowed.empty()) break;
      const auto& e = allowed[rng() % allowed.size()];
      p.contractEdge(e.u, e.v);
    }
    KernelLabels labels(p.graph().slotCount(), kNoBlock);
    for (const VertexId v : p.graph().liveVertices()) labels[v] = static_cast<BlockId>(rng() % 3);
    for (const auto& t : p.terminals()) labels[t.vertex] = t.index;
    const Assignment a = projectSolution(p, labels);
    EXPECT_EQ(cutValue(g, a, inst.terminals), kernelCutValue(p, labels));
  }
}

TEST(ConnectedComponents, CountsComponents) {
  const std::vector<WeightedEdge> edges{{0, 1, 1}, {2, 3, 1}};
  const auto g = StaticGraph::fromEdgeList(5, edges);
  std::vector<VertexId> comp;
  EXPECT_EQ(connectedComponents(g, comp), 3u);
  EXPECT_EQ(comp[0], comp[1]);
  EXPECT_NE(comp[0], comp[2]);
}

}  // namespace
}  // namespace mtcut
