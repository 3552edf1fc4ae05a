#ifndef NGACSAFE_ACCESS_HPP
#define NGACSAFE_ACCESS_HPP

#include <ngacsafe/model.hpp>

#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace ngacsafe {

namespace detail {

// Traversable edges for one right: assignments plus associations labeled
// `right`. Prohibitions are never traversed.
inline bool traversable(const Edge &e, const Right &right) {
  switch (e.kind) {
  case EdgeKind::UserAssign:
  case EdgeKind::ResAssign:
    return true;
  case EdgeKind::Assoc:
    return e.label && *e.label == right;
  case EdgeKind::Prohib:
    return false;
  }
  return false;
}

struct RightGraph {
  // node -> (successor, edge is an association)
  std::map<EntityId, std::vector<std::pair<EntityId, bool>>> out;
};

inline RightGraph right_graph(const StateDigraph &state, const Right &right) {
  RightGraph g;
  for (const auto &e : state.edges)
    if (traversable(e, right))
      g.out[e.src].emplace_back(e.dst, e.kind == EdgeKind::Assoc);
  return g;
}

// Resources reachable from `user` by a path that crosses an association.
// The search runs on (vertex, crossed) pairs so that malformed states with
// assignment edges bypassing the association layer are still judged
// correctly.
inline std::set<EntityId> reachable_resources(const StateDigraph &state,
                                              const RightGraph &g,
                                              const EntityId &user) {
  std::set<EntityId> found;
  std::set<std::pair<EntityId, bool>> seen{{user, false}};
  std::deque<std::pair<EntityId, bool>> queue{{user, false}};
  while (!queue.empty()) {
    auto [v, crossed] = queue.front();
    queue.pop_front();
    if (crossed && state.has_vertex(v, EntityKind::Resource))
      found.insert(v);
    auto it = g.out.find(v);
    if (it == g.out.end())
      continue;
    for (const auto &[w, is_assoc] : it->second) {
      std::pair<EntityId, bool> next{w, crossed || is_assoc};
      if (seen.insert(next).second)
        queue.push_back(std::move(next));
    }
  }
  return found;
}

} // namespace detail

/// u ->^right rs: a directed path from user u to resource rs through an
/// association labeled `right`. Absent vertices yield false.
inline bool access_holds(const StateDigraph &state, const EntityId &user,
                         const Right &right, const EntityId &resource) {
  if (!state.has_vertex(user, EntityKind::User) ||
      !state.has_vertex(resource, EntityKind::Resource))
    return false;
  const auto g = detail::right_graph(state, right);
  return detail::reachable_resources(state, g, user).contains(resource);
}

using AccessRelation = std::set<std::pair<EntityId, EntityId>>;

inline AccessRelation access_relation(const StateDigraph &state,
                                      const Right &right) {
  AccessRelation rel;
  const auto g = detail::right_graph(state, right);
  for (const auto &u : state.vertices.of(EntityKind::User))
    for (const auto &rs : detail::reachable_resources(state, g, u))
      rel.emplace(u, rs);
  return rel;
}

} // namespace ngacsafe

#endif // NGACSAFE_ACCESS_HPP
