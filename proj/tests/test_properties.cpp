// Randomized invariants with fixed seeds.

#include "support.hpp"

#include <ngacsafe/oracles.hpp>

#include <gtest/gtest.h>

using namespace ngacsafe;
using namespace ngacsafe::testing;

namespace {

bool well_formed(const Schema &schema, const StateDigraph &s) {
  for (const auto &e : s.edges)
    if (check_edge_domain(s.vertices, schema.rights, e))
      return false;
  return true;
}

// Some argument the command could plausibly take in the model.
Argument random_argument(std::mt19937 &rng, const NgacModel &m,
                         const Supergraph &sg, const Command &c) {
  if (!c.target.is_edge()) {
    const auto &pool = m.schema.universe.of(c.target.vertex_kind());
    if (pool.empty())
      return EntityId{"none"};
    return *std::next(pool.begin(), pick(rng, 0, pool.size() - 1));
  }
  std::vector<Edge> pool;
  for (const auto &e : sg.edge_list)
    if (e.kind == c.target.edge_kind())
      pool.push_back(e);
  if (pool.empty())
    return Edge{c.target.edge_kind(), "none", "none", std::nullopt};
  return pool[pick(rng, 0, pool.size() - 1)];
}

} // namespace

TEST(Properties, RandomWalksKeepStatesWellFormed) {
  std::mt19937 rng(1001);
  for (int i = 0; i < 60; ++i) {
    const auto m = random_model(rng);
    const auto sg = build_supergraph(m);
    const auto cg = build_constraint_graph(m, sg);
    const auto valid = oracles::all_valid_subgraphs(sg, cg);
    StateDigraph s = m.initial;
    for (int step = 0; step < 40; ++step) {
      const auto &c = m.commands[pick(rng, 0, m.commands.size() - 1)];
      const auto arg = random_argument(rng, m, sg, c);
      const auto next = execute_command(m.schema, s, c, arg);
      if (!command_enabled(m.schema, s, c, arg)) {
        ASSERT_EQ(next, s);
      }
      s = next;
      ASSERT_TRUE(well_formed(m.schema, s));
      ASSERT_TRUE(acyclicity_diagnostics(s, "walk").empty());
      ASSERT_TRUE(valid.contains(s)) << "walk left the valid subgraphs";
    }
  }
}

TEST(Properties, PrimitiveOpsPreserveEdgeDomains) {
  std::mt19937 rng(1002);
  for (int i = 0; i < 40; ++i) {
    const auto m = random_model(rng);
    StateDigraph s = m.initial;
    const auto sg = build_supergraph(m);
    for (int step = 0; step < 40; ++step) {
      PrimitiveOp op;
      op.action = coin(rng, 0.5) ? Action::Create : Action::Destroy;
      if (coin(rng, 0.4)) {
        const auto k = kAllEntityKinds[pick(rng, 0, 3)];
        const auto &pool = m.schema.universe.of(k);
        if (pool.empty())
          continue;
        op.target = Vertex{*std::next(pool.begin(), pick(rng, 0, pool.size() - 1)), k};
      } else {
        if (sg.edge_list.empty())
          continue;
        op.target = sg.edge_list[pick(rng, 0, sg.edge_list.size() - 1)];
      }
      try {
        s = apply_primitive_op(m.schema, s, op);
      } catch (const PreconditionError &) {
        continue;
      }
      ASSERT_TRUE(well_formed(m.schema, s));
    }
  }
}

TEST(Properties, SafetyAgreesWithStateSearch) {
  std::mt19937 rng(1003);
  int unsafe = 0;
  for (int i = 0; i < 150; ++i) {
    const auto m = random_model(rng);
    for (auto scope : {CandidateScope::Initial, CandidateScope::AllPotential}) {
      SafetyOptions opts;
      opts.scope = scope;
      const auto fast = check_safety(m, opts);
      const auto slow = oracles::brute_force_safety(m, scope);
      ASSERT_EQ(fast.safe, slow.safe) << "model " << i << "\n"
                                      << io::serialize_policy(m);
      if (fast.safe)
        continue;
      ++unsafe;
      const auto &w = *fast.witness;
      EXPECT_TRUE(fast.certified);
      EXPECT_TRUE(verify_unsafety_certificate(m, w.user, w.resource, w.right,
                                              w.sequence));
    }
  }
  EXPECT_GT(unsafe, 10);
}

TEST(Properties, ValidSubgraphsAreReachableStates) {
  std::mt19937 rng(1004);
  for (int i = 0; i < 60; ++i) {
    const auto m = random_model(rng);
    const auto sg = build_supergraph(m);
    ASSERT_EQ(oracles::explore_states(m),
              oracles::all_valid_subgraphs(sg, build_constraint_graph(m, sg)))
        << io::serialize_policy(m);
  }
}

TEST(Properties, ReducedInstancesAgreeWithStateSearch) {
  std::mt19937 rng(1005);
  int checked = 0;
  while (checked < 60) {
    const auto inst = random_dacc(rng, 5, 0.35);
    if (inst.dag().vertex_count() > 5)
      continue;
    ++checked;
    const auto m = reduce_dacc_to_cosp(inst);
    ASSERT_EQ(check_safety(m).safe, oracles::brute_force_safety(m).safe);
  }
}

TEST(Properties, GeneratorsAreDeterministic) {
  std::mt19937 a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(random_model(a), random_model(b));
  }
  EXPECT_EQ(io::serialize_policy(gen_mutex_groups_model(3, {2, 4})),
            io::serialize_policy(gen_mutex_groups_model(3, {2, 4})));
  const auto x = reduce_3col_to_dacc(SimpleGraph::make({"a", "b"}, {{0, 1}}));
  const auto y = reduce_3col_to_dacc(SimpleGraph::make({"a", "b"}, {{0, 1}}));
  EXPECT_EQ(io::to_json(x), io::to_json(y));
}

TEST(Properties, MaximalityOnlySearchIsEnough) {
  // Every valid edge set lies inside some maximal one, so a path in any
  // valid subgraph is found.
  std::mt19937 rng(1006);
  for (int i = 0; i < 100; ++i) {
    const auto inst = random_dacc(rng, 8, 0.4);
    const auto all = enumerate_mis(inst.constraints());
    for (std::uint32_t mask = 0; mask < (1u << inst.dag().edge_count()); ++mask) {
      std::vector<Index> s;
      for (Index e = 0; e < inst.dag().edge_count(); ++e)
        if (mask >> e & 1u)
          s.push_back(e);
      if (!is_valid_subgraph(inst, s))
        continue;
      const bool covered = std::any_of(all.begin(), all.end(), [&](const auto &m) {
        return std::includes(m.begin(), m.end(), s.begin(), s.end());
      });
      ASSERT_TRUE(covered);
    }
  }
}
