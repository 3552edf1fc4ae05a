#ifndef NGACSAFE_TESTS_SUPPORT_HPP
#define NGACSAFE_TESTS_SUPPORT_HPP

// Fixture loading and seeded generators shared by the unit, property and
// acceptance suites.

#include <ngacsafe/io.hpp>
#include <ngacsafe/ngacsafe.hpp>

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ngacsafe::testing {

inline std::string fixture_path(const std::string &name) {
  return std::string(NGACSAFE_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string &name) {
  std::ifstream f(fixture_path(name), std::ios::binary);
  if (!f)
    throw std::runtime_error("missing fixture " + name);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline NgacModel load_model(const std::string &name) {
  return io::parse_policy(read_fixture(name));
}

inline bool coin(std::mt19937 &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

inline std::size_t pick(std::mt19937 &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<std::string> numbered(const std::string &prefix,
                                         std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

inline ConstraintGraph random_constraint_graph(std::mt19937 &rng,
                                               std::size_t n, double p) {
  std::vector<IndexPair> cs;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (coin(rng, p))
        cs.emplace_back(a, b);
  return ConstraintGraph(n, std::move(cs));
}

inline SimpleGraph random_simple_graph(std::mt19937 &rng, std::size_t n,
                                       double p) {
  std::vector<IndexPair> es;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (coin(rng, p))
        es.emplace_back(a, b);
  return SimpleGraph::make(numbered("v", n), std::move(es));
}

/// DAG on vertices ordered 0..n-1 with edges only forward, at most
/// `max_edges` of them, source 0 and target n-1.
inline DaccInstance random_dacc(std::mt19937 &rng, std::size_t max_edges,
                                double conflict_p = 0.3) {
  const std::size_t n = pick(rng, 2, 6);
  std::vector<IndexPair> candidates;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      candidates.emplace_back(a, b);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const std::size_t m = pick(rng, 0, std::min(max_edges, candidates.size()));
  candidates.resize(m);
  std::sort(candidates.begin(), candidates.end());
  Dag dag(numbered("x", n), candidates);
  return DaccInstance(std::move(dag), random_constraint_graph(rng, m, conflict_p),
                      0, n - 1);
}

/// Small model inside the class where constraint-based analysis is exact:
/// conditions are symmetric, the initial state satisfies them and every
/// element kind can be destroyed. At most six entities in the universe.
inline NgacModel random_model(std::mt19937 &rng) {
  NgacModel m;
  m.schema.rights = {"r"};
  if (coin(rng, 0.5))
    m.schema.rights.insert("w");

  const std::size_t users = pick(rng, 1, 2);
  const std::size_t uattrs = pick(rng, 1, 2);
  auto &init = m.initial.vertices;
  for (const auto &u : numbered("u", users))
    init.of(EntityKind::User).insert(u);
  for (const auto &a : numbered("ua", uattrs))
    init.of(EntityKind::UserAttr).insert(a);
  init.of(EntityKind::Resource).insert("rs0");
  init.of(EntityKind::ResourceAttr).insert("ra0");
  m.schema.universe = init;

  // One extra entity that only a vertex create can bring in.
  std::optional<EntityKind> extra;
  if (init.size() < 6 && coin(rng, 0.5)) {
    extra = coin(rng, 0.5) ? EntityKind::User : EntityKind::Resource;
    m.schema.universe.of(*extra).insert(*extra == EntityKind::User ? "u_new"
                                                                   : "rs_new");
  }
  const auto &uni = m.schema.universe;

  // Forward-only candidates keep every supergraph acyclic.
  std::vector<Edge> candidates;
  const std::vector<std::string> ua(uni.of(EntityKind::UserAttr).begin(),
                                    uni.of(EntityKind::UserAttr).end());
  for (const auto &u : uni.of(EntityKind::User))
    for (const auto &a : ua)
      candidates.push_back(user_assign(u, a));
  for (std::size_t i = 0; i < ua.size(); ++i)
    for (std::size_t j = i + 1; j < ua.size(); ++j)
      candidates.push_back(user_assign(ua[i], ua[j]));
  for (const auto &rs : uni.of(EntityKind::Resource))
    candidates.push_back(res_assign("ra0", rs));
  for (const auto &a : ua)
    for (const auto &r : m.schema.rights) {
      candidates.push_back(assoc(a, "ra0", r));
      if (coin(rng, 0.15))
        candidates.push_back(prohib(a, "ra0", r));
    }
  std::shuffle(candidates.begin(), candidates.end(), rng);

  // The resource link is usually there so that access paths can complete.
  std::vector<Edge> potential;
  if (coin(rng, 0.8))
    potential.push_back(res_assign("ra0", "rs0"));
  for (const auto &e : candidates)
    if (potential.size() < 10 && e != res_assign("ra0", "rs0") && coin(rng, 0.6))
      potential.push_back(e);
  const std::size_t n = potential.size();

  std::vector<bool> creatable(n), initial(n);
  for (std::size_t i = 0; i < n; ++i)
    creatable[i] = coin(rng, 0.8);
  std::vector<std::set<std::size_t>> conflicts(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((creatable[i] || creatable[j]) && coin(rng, 0.25)) {
        conflicts[i].insert(j);
        conflicts[j].insert(i);
      }
  for (std::size_t i = 0; i < n; ++i) {
    const auto &e = potential[i];
    const bool endpoints = m.initial.vertices.kind_of(e.src) &&
                           m.initial.vertices.kind_of(e.dst);
    if (!endpoints || !coin(rng, 0.5))
      continue;
    bool clash = false;
    for (auto j : conflicts[i])
      clash = clash || initial[j];
    initial[i] = !clash;
    if (initial[i])
      m.initial.edges.insert(e);
  }

  for (auto k : kAllEntityKinds)
    m.commands.push_back({"destroy_" + std::string(to_string(k)),
                          Action::Destroy, OpTarget{k}, std::nullopt, {}});
  for (auto k : kAllEdgeKinds)
    m.commands.push_back({"destroy_" + std::string(to_string(k)),
                          Action::Destroy, OpTarget{k}, std::nullopt, {}});
  if (extra)
    m.commands.push_back({"create_" + std::string(to_string(*extra)),
                          Action::Create, OpTarget{*extra}, std::nullopt, {}});
  for (std::size_t i = 0; i < n; ++i) {
    if (!creatable[i])
      continue;
    Command c{"create_" + std::to_string(i), Action::Create,
              OpTarget{potential[i].kind}, potential[i], {}};
    for (auto j : conflicts[i])
      c.absent.insert(potential[j]);
    m.commands.push_back(std::move(c));
  }
  return m;
}

} // namespace ngacsafe::testing

#endif // NGACSAFE_TESTS_SUPPORT_HPP
