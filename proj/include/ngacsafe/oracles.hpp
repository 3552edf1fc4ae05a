#ifndef NGACSAFE_ORACLES_HPP
#define NGACSAFE_ORACLES_HPP

// Exhaustive reference implementations. They are exponential, guarded by
// hard size limits, and deliberately share no search code with the
// routines they check.

#include <ngacsafe/access.hpp>
#include <ngacsafe/dacc.hpp>
#include <ngacsafe/graph.hpp>
#include <ngacsafe/model.hpp>
#include <ngacsafe/safety.hpp>

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ngacsafe::oracles {

/// Effective limit: NGACSAFE_SIZE_GUARD (a positive integer) replaces every
/// default limit when set.
inline std::size_t size_limit(std::size_t fallback) {
  if (const char *env = std::getenv("NGACSAFE_SIZE_GUARD")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return fallback;
}

inline void guard(std::size_t size, std::size_t fallback, const char *what) {
  const std::size_t lim = size_limit(fallback);
  if (size > lim)
    throw SizeGuardExceeded(std::string(what) + ": size " +
                            std::to_string(size) + " exceeds limit " +
                            std::to_string(lim));
}

/// All maximal independent sets by filtering every vertex subset.
inline std::set<std::vector<Index>> brute_force_mis(const ConstraintGraph &g) {
  const std::size_t n = g.size();
  guard(n, 20, "brute_force_mis");
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [a, b] : g.conflicts()) {
    nbr[a] |= 1u << b;
    nbr[b] |= 1u << a;
  }
  std::set<std::vector<Index>> out;
  const std::uint32_t full = n == 0 ? 0 : (n == 32 ? ~0u : (1u << n) - 1);
  for (std::uint32_t s = 0;; ++s) {
    bool independent = true;
    for (std::size_t v = 0; v < n && independent; ++v)
      if ((s >> v & 1u) && (nbr[v] & s))
        independent = false;
    bool maximal = independent;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!(s >> v & 1u) && !(nbr[v] & s))
        maximal = false;
    if (maximal) {
      std::vector<Index> set;
      for (std::size_t v = 0; v < n; ++v)
        if (s >> v & 1u)
          set.push_back(v);
      out.insert(std::move(set));
    }
    if (s == full)
      break;
  }
  return out;
}

/// Whether some conflict-free edge subset connects source to target.
inline bool brute_force_dacc(const DaccInstance &inst) {
  const std::size_t m = inst.dag().edge_count();
  guard(m, 20, "brute_force_dacc");
  const std::size_t n = inst.dag().vertex_count();
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    bool valid = true;
    for (auto [a, b] : inst.constraints().conflicts())
      if ((s >> a & 1u) && (s >> b & 1u)) {
        valid = false;
        break;
      }
    if (!valid)
      continue;
    // Relax edges until nothing changes.
    std::vector<char> reach(n, 0);
    reach[inst.source()] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t e = 0; e < m; ++e) {
        if (!(s >> e & 1u))
          continue;
        auto [a, b] = inst.dag().edge(e);
        if (reach[a] && !reach[b]) {
          reach[b] = 1;
          changed = true;
        }
      }
    }
    if (reach[inst.target()])
      return true;
  }
  return false;
}

/// Whether some of the 3^n colour assignments is proper.
inline bool brute_force_3col(const SimpleGraph &g) {
  const std::size_t n = g.vertices.size();
  guard(n, 15, "brute_force_3col");
  std::vector<int> color(n, 0);
  for (;;) {
    bool proper = true;
    for (auto [a, b] : g.edges)
      if (color[a] == color[b]) {
        proper = false;
        break;
      }
    if (proper)
      return true;
    std::size_t i = 0;
    while (i < n && color[i] == 2)
      color[i++] = 0;
    if (i == n)
      return false;
    ++color[i];
  }
}

/// Access relation for `right` by enumerating simple paths over all
/// non-prohibition edges; a path counts when it ends at a resource, uses
/// at least one association and every association on it is labeled
/// `right`.
inline AccessRelation brute_force_access(const StateDigraph &state,
                                         const Right &right) {
  std::map<EntityId, std::vector<const Edge *>> out;
  for (const auto &e : state.edges)
    if (e.kind != EdgeKind::Prohib)
      out[e.src].push_back(&e);
  AccessRelation rel;
  for (const auto &u : state.vertices.of(EntityKind::User)) {
    std::set<EntityId> on_path{u};
    auto walk = [&](auto &&self, const EntityId &v, bool crossed) -> void {
      if (crossed && state.has_vertex(v, EntityKind::Resource))
        rel.emplace(u, v);
      for (const Edge *e : out[v]) {
        if (on_path.contains(e->dst))
          continue;
        if (e->kind == EdgeKind::Assoc && e->label != right)
          continue;
        on_path.insert(e->dst);
        self(self, e->dst, crossed || e->kind == EdgeKind::Assoc);
        on_path.erase(e->dst);
      }
    };
    walk(walk, u, false);
  }
  return rel;
}

namespace detail {

// Compact model of the reachable state space: entity bits, then potential
// edge bits.
class StateSpace {
public:
  using Mask = std::uint64_t;

  explicit StateSpace(const NgacModel &m) : m_(m) {
    for (auto k : kAllEntityKinds)
      for (const auto &id : m.schema.universe.of(k)) {
        ent_index_[id] = entities_.size();
        entities_.push_back({id, k});
      }
    guard(entities_.size(), 8, "brute_force_safety universe");

    std::set<Edge> pot(m.initial.edges.begin(), m.initial.edges.end());
    for (const auto &c : m.commands) {
      if (c.action != Action::Create || !c.target.is_edge())
        continue;
      if (c.guard) {
        pot.insert(*c.guard);
        continue;
      }
      for (const auto &[a, ka] : entities_)
        for (const auto &[b, kb] : entities_) {
          if (!kinds_fit(c.target.edge_kind(), ka, kb))
            continue;
          if (is_labeled(c.target.edge_kind()))
            for (const auto &r : m.schema.rights)
              pot.insert(Edge{c.target.edge_kind(), a, b, r});
          else
            pot.insert(Edge{c.target.edge_kind(), a, b, std::nullopt});
        }
    }
    edges_.assign(pot.begin(), pot.end());
    guard(edges_.size(), 20, "brute_force_safety potential edges");
    for (std::size_t i = 0; i < edges_.size(); ++i)
      edge_index_[edges_[i]] = i;
  }

  static bool kinds_fit(EdgeKind k, EntityKind a, EntityKind b) {
    using K = EntityKind;
    switch (k) {
    case EdgeKind::UserAssign:
      return (a == K::User || a == K::UserAttr) && b == K::UserAttr;
    case EdgeKind::ResAssign:
      return a == K::ResourceAttr && (b == K::Resource || b == K::ResourceAttr);
    case EdgeKind::Assoc:
    case EdgeKind::Prohib:
      return a == K::UserAttr && b == K::ResourceAttr;
    }
    return false;
  }

  Mask ent_bit(std::size_t i) const { return Mask{1} << i; }
  Mask edge_bit(std::size_t i) const {
    return Mask{1} << (entities_.size() + i);
  }

  Mask encode(const StateDigraph &s) const {
    Mask x = 0;
    for (std::size_t i = 0; i < entities_.size(); ++i)
      if (s.has_vertex(entities_[i].first, entities_[i].second))
        x |= ent_bit(i);
    for (const auto &e : s.edges)
      x |= edge_bit(edge_index_.at(e));
    return x;
  }

  StateDigraph decode(Mask x) const {
    StateDigraph s;
    for (std::size_t i = 0; i < entities_.size(); ++i)
      if (x & ent_bit(i))
        s.vertices.of(entities_[i].second).insert(entities_[i].first);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (x & edge_bit(i))
        s.edges.insert(edges_[i]);
    return s;
  }

  struct Move {
    std::size_t command;
    Argument arg;
    Mask next;
  };

  // Successor states in (command, argument) order.
  std::vector<Move> moves(Mask x) const {
    std::vector<Move> out;
    for (std::size_t ci = 0; ci < m_.commands.size(); ++ci) {
      const auto &c = m_.commands[ci];
      if (!c.target.is_edge()) {
        const auto k = c.target.vertex_kind();
        if (c.guard || !c.absent.empty())
          continue;
        for (std::size_t i = 0; i < entities_.size(); ++i) {
          if (entities_[i].second != k)
            continue;
          const bool present = x & ent_bit(i);
          if (c.action == Action::Create && !present)
            out.push_back({ci, entities_[i].first, x | ent_bit(i)});
          if (c.action == Action::Destroy && present)
            out.push_back({ci, entities_[i].first, drop_vertex(x, i)});
        }
        continue;
      }
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge &e = edges_[i];
        if (e.kind != c.target.edge_kind())
          continue;
        if (c.guard && *c.guard != e)
          continue;
        const bool present = x & edge_bit(i);
        if (c.action == Action::Destroy) {
          if (present)
            out.push_back({ci, e, x & ~edge_bit(i)});
          continue;
        }
        if (present || !endpoints_present(x, e))
          continue;
        if (e.label && !m_.schema.rights.contains(*e.label))
          continue;
        bool blocked = false;
        for (const auto &a : c.absent) {
          auto it = edge_index_.find(a);
          if (it != edge_index_.end() && (x & edge_bit(it->second)))
            blocked = true;
        }
        if (!blocked)
          out.push_back({ci, e, x | edge_bit(i)});
      }
    }
    return out;
  }

private:
  bool endpoints_present(Mask x, const Edge &e) const {
    auto a = ent_index_.find(e.src);
    auto b = ent_index_.find(e.dst);
    if (a == ent_index_.end() || b == ent_index_.end())
      return false;
    if (!kinds_fit(e.kind, entities_[a->second].second,
                   entities_[b->second].second))
      return false;
    return (x & ent_bit(a->second)) && (x & ent_bit(b->second));
  }

  Mask drop_vertex(Mask x, std::size_t i) const {
    x &= ~ent_bit(i);
    const auto &id = entities_[i].first;
    for (std::size_t j = 0; j < edges_.size(); ++j)
      if (edges_[j].src == id || edges_[j].dst == id)
        x &= ~edge_bit(j);
    return x;
  }

  const NgacModel &m_;
  std::vector<std::pair<EntityId, EntityKind>> entities_;
  std::map<EntityId, std::size_t> ent_index_;
  std::vector<Edge> edges_;
  std::map<Edge, std::size_t> edge_index_;
};

using AccessTriple = std::tuple<EntityId, EntityId, Right>;

inline std::set<AccessTriple> all_access(const NgacModel &m,
                                         const StateDigraph &s) {
  std::set<AccessTriple> out;
  for (const auto &r : m.schema.rights)
    for (const auto &[u, rs] : brute_force_access(s, r))
      out.emplace(u, rs, r);
  return out;
}

} // namespace detail

/// Every state reachable from the initial state under the model's
/// commands.
inline std::set<StateDigraph> explore_states(const NgacModel &m) {
  detail::StateSpace space(m);
  const auto start = space.encode(m.initial);
  std::set<detail::StateSpace::Mask> seen{start};
  std::deque<detail::StateSpace::Mask> queue{start};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto &mv : space.moves(x))
      if (seen.insert(mv.next).second)
        queue.push_back(mv.next);
  }
  std::set<StateDigraph> out;
  for (auto x : seen)
    out.insert(space.decode(x));
  return out;
}

/// Breadth-first search of the state space for new access. The witness
/// is a shortest command sequence; its tuple is the smallest new one in
/// the first offending state.
inline SafetyVerdict brute_force_safety(const NgacModel &m,
                                        CandidateScope scope =
                                            CandidateScope::Initial) {
  using Mask = detail::StateSpace::Mask;
  detail::StateSpace space(m);
  const auto before = detail::all_access(m, m.initial);
  auto in_scope = [&](const EntityId &u, const EntityId &rs) {
    return scope == CandidateScope::AllPotential ||
           (m.initial.has_vertex(u, EntityKind::User) &&
            m.initial.has_vertex(rs, EntityKind::Resource));
  };

  struct Parent {
    Mask prev;
    std::size_t command;
    Argument arg;
  };
  const Mask start = space.encode(m.initial);
  std::unordered_map<Mask, std::optional<Parent>> parent{{start, std::nullopt}};
  std::deque<Mask> queue{start};
  SafetyVerdict verdict;
  while (!queue.empty()) {
    const Mask x = queue.front();
    queue.pop_front();
    for (const auto &t : detail::all_access(m, space.decode(x))) {
      const auto &[u, rs, r] = t;
      if (before.contains(t) || !in_scope(u, rs))
        continue;
      CommandSequence seq;
      for (Mask y = x; parent.at(y);) {
        const auto &p = *parent.at(y);
        seq.push_back({m.commands[p.command], p.arg});
        y = p.prev;
      }
      verdict.safe = false;
      verdict.certified = true;
      verdict.witness = SafetyWitness{u, rs, r, {seq.rbegin(), seq.rend()}, {}};
      return verdict;
    }
    for (auto &mv : space.moves(x))
      if (parent.emplace(mv.next, Parent{x, mv.command, mv.arg}).second)
        queue.push_back(mv.next);
  }
  return verdict;
}

/// Every subgraph of the supergraph whose edges are conflict-free: any
/// vertex subset together with any independent edge subset whose
/// endpoints it contains.
inline std::set<StateDigraph> all_valid_subgraphs(const Supergraph &sg,
                                                  const ConstraintGraph &cg) {
  std::vector<std::pair<EntityId, EntityKind>> verts;
  for (auto k : kAllEntityKinds)
    for (const auto &id : sg.graph.vertices.of(k))
      verts.emplace_back(id, k);
  const std::size_t n = verts.size();
  const std::size_t m = sg.edge_list.size();
  guard(n + m, 24, "all_valid_subgraphs");
  std::set<StateDigraph> out;
  for (std::uint64_t es = 0; es < (std::uint64_t{1} << m); ++es) {
    bool ok = true;
    for (auto [a, b] : cg.conflicts())
      if ((es >> a & 1u) && (es >> b & 1u))
        ok = false;
    if (!ok)
      continue;
    std::set<EntityId> needed;
    for (std::size_t e = 0; e < m; ++e)
      if (es >> e & 1u) {
        needed.insert(sg.edge_list[e].src);
        needed.insert(sg.edge_list[e].dst);
      }
    for (std::uint64_t vs = 0; vs < (std::uint64_t{1} << n); ++vs) {
      StateDigraph s;
      for (std::size_t i = 0; i < n; ++i)
        if (vs >> i & 1u)
          s.vertices.of(verts[i].second).insert(verts[i].first);
      bool covers = true;
      for (const auto &id : needed)
        covers = covers && s.vertices.kind_of(id).has_value();
      if (!covers)
        continue;
      for (std::size_t e = 0; e < m; ++e)
        if (es >> e & 1u)
          s.edges.insert(sg.edge_list[e]);
      out.insert(std::move(s));
    }
  }
  return out;
}

} // namespace ngacsafe::oracles

#endif // NGACSAFE_ORACLES_HPP
