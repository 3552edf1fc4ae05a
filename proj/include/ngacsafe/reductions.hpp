#ifndef NGACSAFE_REDUCTIONS_HPP
#define NGACSAFE_REDUCTIONS_HPP

// Instance transformers 3COL -> DACC and DACC -> co-safety, plus generators
// for worst-case constraint structures.

#include <ngacsafe/dacc.hpp>
#include <ngacsafe/graph.hpp>
#include <ngacsafe/model.hpp>

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ngacsafe {

namespace detail {

// `base`, or `base` with trailing underscores until it is not in `taken`.
inline std::string fresh_name(std::string base, std::set<std::string> &taken) {
  while (taken.contains(base))
    base += '_';
  taken.insert(base);
  return base;
}

} // namespace detail

inline constexpr std::array<char, 3> kColors = {'R', 'G', 'B'};

/// Layout of a reduced 3-colouring instance: which DAG edge assigns which
/// colour to which input vertex.
struct ColoringLayout {
  /// color_edge[i][c]: edge v_i -> c_i for colour index c (R, G, B).
  std::vector<std::array<Index, 3>> color_edge;
};

/// Chain s -> v_1 -> {R_1,G_1,B_1} -> v_2 -> ... -> {R_n,G_n,B_n} -> t. Each
/// vertex's three colour edges form a triangle in the constraint graph,
/// and for every input edge v_i v_j the same-colour edges conflict.
inline DaccInstance reduce_3col_to_dacc(const SimpleGraph &g,
                                        ColoringLayout *layout = nullptr) {
  const std::size_t n = g.vertices.size();
  std::set<std::string> taken(g.vertices.begin(), g.vertices.end());
  std::vector<std::array<std::string, 3>> color_names(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < 3; ++c)
      color_names[i][c] =
          detail::fresh_name(g.vertices[i] + "_" + kColors[c], taken);

  std::vector<std::string> names;
  names.push_back(detail::fresh_name("s", taken));
  std::vector<Index> vi(n);
  std::vector<std::array<Index, 3>> ci(n);
  for (std::size_t i = 0; i < n; ++i) {
    vi[i] = names.size();
    names.push_back(g.vertices[i]);
    for (std::size_t c = 0; c < 3; ++c) {
      ci[i][c] = names.size();
      names.push_back(color_names[i][c]);
    }
  }
  const Index s = 0;
  const Index t = names.size();
  names.push_back(detail::fresh_name("t", taken));

  std::vector<IndexPair> edges;
  ColoringLayout lay;
  lay.color_edge.resize(n);
  if (n == 0) {
    edges.emplace_back(s, t);
  } else {
    edges.emplace_back(s, vi[0]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < 3; ++c) {
        lay.color_edge[i][c] = edges.size();
        edges.emplace_back(vi[i], ci[i][c]);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < 3; ++c)
        edges.emplace_back(ci[i][c], i + 1 < n ? vi[i + 1] : t);
  }

  std::vector<IndexPair> conflicts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &ce = lay.color_edge[i];
    conflicts.emplace_back(ce[0], ce[1]);
    conflicts.emplace_back(ce[0], ce[2]);
    conflicts.emplace_back(ce[1], ce[2]);
  }
  for (auto [a, b] : g.edges)
    for (std::size_t c = 0; c < 3; ++c)
      conflicts.emplace_back(lay.color_edge[a][c], lay.color_edge[b][c]);

  const std::size_t m = edges.size();
  if (layout != nullptr)
    *layout = std::move(lay);
  return DaccInstance(Dag(std::move(names), std::move(edges)),
                      ConstraintGraph(m, std::move(conflicts)), s, t);
}

/// Embeds a DACC instance in the user-attribute layer of an NGAC model:
/// one user assigned to the source, the target associated (right r) with
/// a resource attribute over a single resource. Each DAG edge gets one
/// create command conditioned on the absence of all its conflict
/// partners; destroys are unconditional.
inline NgacModel reduce_dacc_to_cosp(const DaccInstance &inst) {
  const Dag &dag = inst.dag();
  std::set<std::string> taken(dag.names().begin(), dag.names().end());
  const std::string user = detail::fresh_name("u", taken);
  const std::string rs = detail::fresh_name("rs", taken);
  const std::string rsa = detail::fresh_name("rsa", taken);
  const std::string right = detail::fresh_name("r", taken);

  NgacModel m;
  m.schema.rights = {right};
  auto &v = m.initial.vertices;
  v.of(EntityKind::User) = {user};
  v.of(EntityKind::UserAttr) = {dag.names().begin(), dag.names().end()};
  v.of(EntityKind::Resource) = {rs};
  v.of(EntityKind::ResourceAttr) = {rsa};
  m.schema.universe = v;
  m.initial.edges = {user_assign(user, dag.name(inst.source())),
                     res_assign(rsa, rs),
                     assoc(dag.name(inst.target()), rsa, right)};

  auto edge_of = [&](Index e) {
    const auto &[a, b] = dag.edge(e);
    return user_assign(dag.name(a), dag.name(b));
  };

  for (auto k : kAllEntityKinds)
    m.commands.push_back({"destroy_" + std::string(to_string(k)),
                          Action::Destroy, OpTarget{k}, std::nullopt, {}});
  for (auto k : {EdgeKind::UserAssign, EdgeKind::ResAssign, EdgeKind::Assoc})
    m.commands.push_back({"destroy_" + std::string(to_string(k)),
                          Action::Destroy, OpTarget{k}, std::nullopt, {}});
  m.commands.push_back({"create_userAttribute", Action::Create,
                        OpTarget{EntityKind::UserAttr}, std::nullopt, {}});
  for (Index e = 0; e < dag.edge_count(); ++e) {
    Command c{"create_edge_" + std::to_string(e), Action::Create,
              OpTarget{EdgeKind::UserAssign}, edge_of(e), {}};
    for (Index x : inst.constraints().neighbors(e))
      c.absent.insert(edge_of(x));
    m.commands.push_back(std::move(c));
  }
  return m;
}

/// k vertex-disjoint triangles on vertices 0..3k-1.
inline ConstraintGraph gen_disjoint_triangles(std::size_t k) {
  std::vector<IndexPair> cs;
  for (std::size_t i = 0; i < k; ++i) {
    const Index a = 3 * i;
    cs.emplace_back(a, a + 1);
    cs.emplace_back(a, a + 2);
    cs.emplace_back(a + 1, a + 2);
  }
  return ConstraintGraph(3 * k, std::move(cs));
}

/// Users u1..uN and attribute groups group<j>_attr<a>; each user may hold
/// at most one attribute per group. One resource and one right, no
/// associations, so the model is safe and a safety check must exhaust
/// every combination of group choices.
inline NgacModel gen_mutex_groups_model(std::size_t users,
                                        const std::vector<std::size_t> &groups) {
  for (auto k : groups)
    if (k < 2)
      throw InvalidArgument("attribute groups need at least two members");

  NgacModel m;
  m.schema.rights = {"read"};
  auto &v = m.initial.vertices;
  for (std::size_t u = 1; u <= users; ++u)
    v.of(EntityKind::User).insert("u" + std::to_string(u));
  std::vector<std::vector<std::string>> attrs(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j)
    for (std::size_t a = 1; a <= groups[j]; ++a) {
      attrs[j].push_back("group" + std::to_string(j + 1) + "_attr" +
                         std::to_string(a));
      v.of(EntityKind::UserAttr).insert(attrs[j].back());
    }
  v.of(EntityKind::Resource).insert("rs");
  m.schema.universe = v;

  for (auto k : {EntityKind::User, EntityKind::UserAttr, EntityKind::Resource})
    m.commands.push_back({"destroy_" + std::string(to_string(k)),
                          Action::Destroy, OpTarget{k}, std::nullopt, {}});
  m.commands.push_back({"destroy_userAssign", Action::Destroy,
                        OpTarget{EdgeKind::UserAssign}, std::nullopt, {}});
  for (std::size_t u = 1; u <= users; ++u) {
    const std::string user = "u" + std::to_string(u);
    for (const auto &group : attrs)
      for (const auto &a : group) {
        Command c{"assign_" + user + "_" + a, Action::Create,
                  OpTarget{EdgeKind::UserAssign}, user_assign(user, a), {}};
        for (const auto &other : group)
          if (other != a)
            c.absent.insert(user_assign(user, other));
        m.commands.push_back(std::move(c));
      }
  }
  return m;
}

} // namespace ngacsafe

#endif // NGACSAFE_REDUCTIONS_HPP
