#include "support.hpp"

#include <ngacsafe/oracles.hpp>

#include <gtest/gtest.h>

using namespace ngacsafe;
using namespace ngacsafe::testing;

namespace {

// s -> a -> t and s -> b -> t
Dag diamond() {
  return Dag({"s", "a", "b", "t"}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
}

} // namespace

TEST(Dag, RejectsMalformedGraphs) {
  EXPECT_THROW(Dag({"a", "b"}, {{0, 2}}), InvalidArgument);
  EXPECT_THROW(Dag({"a", "b"}, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(Dag({"a", "b"}, {{0, 1}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(Dag({"a", "b"}, {{0, 1}, {1, 0}}), InvalidArgument);
  EXPECT_THROW(Dag({"a", "a"}, {}), InvalidArgument);
}

TEST(Dag, Lookups) {
  const auto d = diamond();
  EXPECT_EQ(d.index_of("b"), Index{2});
  EXPECT_FALSE(d.index_of("z"));
  EXPECT_EQ(d.edge_index(2, 3), Index{3});
  EXPECT_FALSE(d.edge_index(3, 2));
  const auto order = d.topological_order();
  ASSERT_TRUE(order);
  EXPECT_EQ(order->front(), 0u);
  EXPECT_EQ(order->back(), 3u);
}

TEST(DaccInstance, Validates) {
  EXPECT_THROW(DaccInstance(diamond(), ConstraintGraph(3), 0, 3), InvalidArgument);
  EXPECT_THROW(DaccInstance(diamond(), ConstraintGraph(4), 0, 0), InvalidArgument);
  EXPECT_THROW(DaccInstance(diamond(), ConstraintGraph(4), 0, 9), InvalidArgument);
}

TEST(ValidSubgraph, Basics) {
  const DaccInstance inst(diamond(), ConstraintGraph(4, {{0, 1}}), 0, 3);
  EXPECT_TRUE(is_valid_subgraph(inst, {}));
  EXPECT_FALSE(is_valid_subgraph(inst, {0, 1}));
  EXPECT_TRUE(is_valid_subgraph(inst, {0, 2, 3}));
  const DaccInstance free(diamond(), ConstraintGraph(4), 0, 3);
  EXPECT_TRUE(is_valid_subgraph(free, {0, 1, 2, 3}));
  EXPECT_THROW(is_valid_subgraph(free, {7}), InvalidArgument);
}

TEST(StPath, SingleEdge) {
  const Dag d({"s", "t"}, {{0, 1}});
  EXPECT_EQ(st_path(d, 0, 1, std::vector<Index>{0}), (std::vector<Index>{0, 1}));
  EXPECT_FALSE(st_path(d, 0, 1, std::vector<Index>{}));
}

TEST(StPath, OnlyAllowedBranch) {
  const auto d = diamond();
  EXPECT_EQ(st_path(d, 0, 3, std::vector<Index>{2, 3}),
            (std::vector<Index>{0, 2, 3}));
  EXPECT_EQ(path_edges(d, {0, 2, 3}), (std::vector<Index>{2, 3}));
}

TEST(SolveDacc, Unconstrained) {
  const DaccInstance inst(Dag({"s", "t"}, {{0, 1}}), ConstraintGraph(1), 0, 1);
  const auto v = solve_dacc(inst);
  EXPECT_TRUE(v.reachable);
  EXPECT_EQ(v.path, (std::vector<Index>{0, 1}));
}

TEST(SolveDacc, ConflictingTwoEdgePath) {
  const DaccInstance inst(Dag({"s", "a", "t"}, {{0, 1}, {1, 2}}),
                          ConstraintGraph(2, {{0, 1}}), 0, 2);
  const auto v = solve_dacc(inst);
  EXPECT_FALSE(v.reachable);
  EXPECT_FALSE(v.path);
  EXPECT_EQ(v.mis_enumerated, 2u);
  EXPECT_FALSE(oracles::brute_force_dacc(inst));
}

TEST(SolveDacc, NoEdges) {
  const DaccInstance inst(Dag({"s", "t"}, {}), ConstraintGraph(0), 0, 1);
  EXPECT_FALSE(solve_dacc(inst).reachable);
}

TEST(SolveDacc, ColoringOfTriangle) {
  const auto g = SimpleGraph::make({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_TRUE(solve_dacc(reduce_3col_to_dacc(g)).reachable);
}

TEST(SolveDacc, MisLimit) {
  const DaccInstance inst(Dag({"s", "a", "t"}, {{0, 1}, {1, 2}}),
                          ConstraintGraph(2, {{0, 1}}), 0, 2);
  EXPECT_THROW(solve_dacc(inst, {1}), ResourceExhausted);
  EXPECT_NO_THROW(solve_dacc(inst, {2}));
}

TEST(SolveDacc, WitnessIsValidPath) {
  std::mt19937 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto inst = random_dacc(rng, 10);
    const auto v = solve_dacc(inst);
    ASSERT_EQ(v.reachable, oracles::brute_force_dacc(inst)) << "instance " << i;
    if (!v.reachable)
      continue;
    ASSERT_TRUE(is_valid_subgraph(inst, *v.edge_set));
    const auto edges = path_edges(inst.dag(), *v.path);
    EXPECT_EQ(v.path->front(), inst.source());
    EXPECT_EQ(v.path->back(), inst.target());
    for (Index e : edges)
      EXPECT_TRUE(std::binary_search(v.edge_set->begin(), v.edge_set->end(), e));
  }
}

TEST(SolveDacc, DroppingAConflictNeverBreaksReachability) {
  std::mt19937 rng(22);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_dacc(rng, 9, 0.4);
    const auto &cs = inst.constraints().conflicts();
    if (cs.empty() || !solve_dacc(inst).reachable)
      continue;
    auto fewer = cs;
    fewer.erase(fewer.begin() + pick(rng, 0, fewer.size() - 1));
    const DaccInstance relaxed(inst.dag(),
                               ConstraintGraph(inst.constraints().size(), fewer),
                               inst.source(), inst.target());
    EXPECT_TRUE(solve_dacc(relaxed).reachable);
  }
}
