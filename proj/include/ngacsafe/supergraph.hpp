#ifndef NGACSAFE_SUPERGRAPH_HPP
#define NGACSAFE_SUPERGRAPH_HPP

// The supergraph of a model (initial state plus everything any create
// command could ever add, conditions ignored) and the constraint graph on
// its edges that encodes the absence conditions of edge creates.

#include <ngacsafe/diagnostics.hpp>
#include <ngacsafe/graph.hpp>
#include <ngacsafe/model.hpp>
#include <ngacsafe/state_ops.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ngacsafe {

struct Supergraph {
  StateDigraph graph;
  /// graph.edges in set order; position is the constraint-graph vertex.
  std::vector<Edge> edge_list;

  std::optional<Index> index_of(const Edge &e) const {
    auto it = std::lower_bound(edge_list.begin(), edge_list.end(), e);
    if (it == edge_list.end() || *it != e)
      return std::nullopt;
    return static_cast<Index>(it - edge_list.begin());
  }
};

namespace detail {

// Every edge of `kind` over `vertices` that lies in its domain.
inline std::vector<Edge> domain_edges(const EntitySets &vertices,
                                      const std::set<Right> &rights,
                                      EdgeKind kind) {
  std::vector<Edge> out;
  const auto dom = edge_domain(kind);
  std::set<EntityId> srcs = vertices.of(dom.src[0]);
  srcs.insert(vertices.of(dom.src[1]).begin(), vertices.of(dom.src[1]).end());
  std::set<EntityId> dsts = vertices.of(dom.dst);
  if (kind == EdgeKind::ResAssign)
    dsts.insert(vertices.of(EntityKind::ResourceAttr).begin(),
                vertices.of(EntityKind::ResourceAttr).end());
  for (const auto &a : srcs)
    for (const auto &b : dsts) {
      if (is_labeled(kind)) {
        for (const auto &r : rights)
          out.push_back(Edge{kind, a, b, r});
      } else {
        out.push_back(Edge{kind, a, b, std::nullopt});
      }
    }
  return out;
}

// A vertex on a directed cycle among edges of `kind`, if any.
inline std::optional<EntityId> find_cycle(const std::set<Edge> &edges,
                                          EdgeKind kind) {
  std::map<EntityId, std::vector<EntityId>> out;
  for (const auto &e : edges)
    if (e.kind == kind)
      out[e.src].push_back(e.dst);
  enum Mark : char { White, Grey, Black };
  std::map<EntityId, Mark> mark;
  std::optional<EntityId> hit;
  auto visit = [&](auto &&self, const EntityId &v) -> bool {
    mark[v] = Grey;
    for (const auto &w : out[v]) {
      auto m = mark[w];
      if (m == Grey) {
        hit = w;
        return true;
      }
      if (m == White && self(self, w))
        return true;
    }
    mark[v] = Black;
    return false;
  };
  for (const auto &[v, _] : out)
    if (mark[v] == White && visit(visit, v))
      return hit;
  return std::nullopt;
}

} // namespace detail

/// User-DAG and resource-DAG cycle diagnostics for `state`.
inline std::vector<Diagnostic> acyclicity_diagnostics(const StateDigraph &state,
                                                      const std::string &where) {
  std::vector<Diagnostic> ds;
  if (auto v = detail::find_cycle(state.edges, EdgeKind::UserAssign))
    ds.push_back({Severity::Error, "cyclic user dag",
                  where + ": user assignments form a cycle through '" + *v + "'"});
  if (auto v = detail::find_cycle(state.edges, EdgeKind::ResAssign))
    ds.push_back({Severity::Error, "cyclic resource dag",
                  where + ": resource assignments form a cycle through '" + *v +
                      "'"});
  return ds;
}

/// Builds the supergraph without checking acyclicity.
inline Supergraph assemble_supergraph(const NgacModel &model) {
  Supergraph sg;
  sg.graph = model.initial;
  for (const auto &c : model.commands) {
    if (c.action != Action::Create || c.target.is_edge())
      continue;
    const auto k = c.target.vertex_kind();
    const auto &pool = model.schema.universe.of(k);
    sg.graph.vertices.of(k).insert(pool.begin(), pool.end());
  }
  for (const auto &c : model.commands) {
    if (c.action != Action::Create || !c.target.is_edge())
      continue;
    if (c.guard) {
      if (c.guard->kind == c.target.edge_kind() &&
          !check_edge_domain(sg.graph.vertices, model.schema.rights, *c.guard))
        sg.graph.edges.insert(*c.guard);
      continue;
    }
    for (auto &e : detail::domain_edges(sg.graph.vertices, model.schema.rights,
                                        c.target.edge_kind()))
      sg.graph.edges.insert(std::move(e));
  }
  sg.edge_list.assign(sg.graph.edges.begin(), sg.graph.edges.end());
  return sg;
}

/// Supergraph of a model. Throws ModelRejected if its user or resource
/// assignments contain a cycle.
inline Supergraph build_supergraph(const NgacModel &model) {
  Supergraph sg = assemble_supergraph(model);
  auto ds = acyclicity_diagnostics(sg.graph, "supergraph");
  if (!ds.empty())
    throw ModelRejected(std::move(ds));
  return sg;
}

/// Whether an edge-create command can be applied to `e` at all.
inline bool creates_edge(const Command &c, const Edge &e) {
  if (c.action != Action::Create || !c.target.is_edge() ||
      c.target.edge_kind() != e.kind)
    return false;
  return !c.guard || *c.guard == e;
}

/// How each supergraph edge can be created: per creating command, its
/// absence conditions restricted to supergraph edges.
struct CreationIndex {
  struct Creator {
    std::size_t command;          // index into model.commands
    std::set<Index> conditions;   // supergraph edge indices
  };
  std::vector<std::vector<Creator>> creators; // per supergraph edge
  std::vector<std::pair<std::size_t, Edge>> vacuous; // (command, condition)

  /// Conditions shared by every creator of `e`.
  std::set<Index> effective(Index e) const {
    const auto &cs = creators.at(e);
    if (cs.empty())
      return {};
    std::set<Index> acc = cs.front().conditions;
    for (std::size_t i = 1; i < cs.size(); ++i) {
      std::set<Index> keep;
      std::set_intersection(acc.begin(), acc.end(), cs[i].conditions.begin(),
                            cs[i].conditions.end(),
                            std::inserter(keep, keep.end()));
      acc = std::move(keep);
    }
    return acc;
  }
};

inline CreationIndex index_creators(const NgacModel &model,
                                    const Supergraph &sg) {
  CreationIndex idx;
  idx.creators.resize(sg.edge_list.size());
  for (std::size_t ci = 0; ci < model.commands.size(); ++ci) {
    const auto &c = model.commands[ci];
    if (c.action != Action::Create || !c.target.is_edge())
      continue;
    std::set<Index> conds;
    for (const auto &a : c.absent) {
      if (auto i = sg.index_of(a))
        conds.insert(*i);
      else
        idx.vacuous.emplace_back(ci, a);
    }
    auto add = [&](Index e) { idx.creators[e].push_back({ci, conds}); };
    if (c.guard) {
      if (auto e = sg.index_of(*c.guard); e && c.guard->kind == c.target.edge_kind())
        add(*e);
    } else {
      for (Index e = 0; e < sg.edge_list.size(); ++e)
        if (sg.edge_list[e].kind == c.target.edge_kind())
          add(e);
    }
  }
  return idx;
}

/// Conflict graph on the supergraph's edges: for each creatable edge e and
/// each condition e' shared by all of e's creators, the pair {e, e'}.
/// Conditions naming edges outside the supergraph can never fail and are
/// dropped.
inline ConstraintGraph build_constraint_graph(const NgacModel &model,
                                              const Supergraph &sg) {
  const auto idx = index_creators(model, sg);
  std::vector<IndexPair> conflicts;
  for (Index e = 0; e < sg.edge_list.size(); ++e)
    for (Index x : idx.effective(e))
      if (x != e)
        conflicts.emplace_back(e, x);
  return ConstraintGraph(sg.edge_list.size(), std::move(conflicts));
}

} // namespace ngacsafe

#endif // NGACSAFE_SUPERGRAPH_HPP
