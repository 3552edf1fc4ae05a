#ifndef NGACSAFE_VALIDATE_HPP
#define NGACSAFE_VALIDATE_HPP

#include <ngacsafe/diagnostics.hpp>
#include <ngacsafe/model.hpp>
#include <ngacsafe/state_ops.hpp>
#include <ngacsafe/supergraph.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ngacsafe {

struct ValidationOptions {
  /// Downgrade the conditions that make the constraint graph inexact
  /// (differing or one-sided conditions, initial state violating the
  /// constraints) from errors to warnings.
  bool lenient = false;
};

namespace detail {

inline void check_partition(const EntitySets &sets, const std::string &where,
                            std::vector<Diagnostic> &out) {
  std::map<EntityId, EntityKind> first;
  for (auto k : kAllEntityKinds)
    for (const auto &id : sets.of(k)) {
      if (id.empty()) {
        out.push_back({Severity::Error, "empty id",
                       where + ": empty " + std::string(to_string(k)) + " name"});
        continue;
      }
      auto [it, fresh] = first.emplace(id, k);
      if (!fresh)
        out.push_back({Severity::Error, "kind overlap",
                       where + ": '" + id + "' is both a " +
                           std::string(to_string(it->second)) + " and a " +
                           std::string(to_string(k))});
    }
}

inline void check_commands(const NgacModel &m, std::vector<Diagnostic> &out) {
  std::set<std::string> names;
  for (const auto &c : m.commands) {
    const std::string who = "command '" + c.name + "'";
    if (c.name.empty())
      out.push_back({Severity::Error, "command shape", "command without a name"});
    else if (!names.insert(c.name).second)
      out.push_back({Severity::Error, "duplicate command name", who});

    const bool edge_create = c.action == Action::Create && c.target.is_edge();
    if (!edge_create && (c.guard || !c.absent.empty()))
      out.push_back({Severity::Error, "command shape",
                     who + ": only edge creates may carry conditions"});
    if (edge_create && !c.absent.empty() && !c.guard)
      out.push_back({Severity::Error, "command shape",
                     who + ": conditional create must pin its argument"});
    if (c.guard && c.target.is_edge() && c.guard->kind != c.target.edge_kind())
      out.push_back({Severity::Error, "command shape",
                     who + ": guard " + to_string(*c.guard) +
                         " does not match target " +
                         std::string(to_string(c.target))});

    auto check_ref = [&](const Edge &e, const char *role) {
      if (auto why = check_edge_domain(m.schema.universe, m.schema.rights, e))
        out.push_back({Severity::Error, "command reference",
                       who + ": " + role + " " + *why});
    };
    if (c.guard)
      check_ref(*c.guard, "guard");
    for (const auto &e : c.absent)
      check_ref(e, "condition");
  }
}

} // namespace detail

/// Well-formedness diagnostics. An empty result, or one holding only
/// warnings, means the model is accepted.
inline std::vector<Diagnostic> validate_model(const NgacModel &m,
                                              const ValidationOptions &opts = {}) {
  std::vector<Diagnostic> out;
  const Severity strictness = opts.lenient ? Severity::Warning : Severity::Error;

  detail::check_partition(m.initial.vertices, "initial state", out);
  detail::check_partition(m.schema.universe, "universe", out);
  for (const auto &r : m.schema.rights) {
    if (r.empty())
      out.push_back({Severity::Error, "empty id", "empty right name"});
    if (auto k = m.schema.universe.kind_of(r))
      out.push_back({Severity::Error, "kind overlap",
                     "right '" + r + "' is also a " + std::string(to_string(*k))});
  }
  for (auto k : kAllEntityKinds)
    for (const auto &id : m.initial.vertices.of(k))
      if (!m.schema.universe.contains(id, k))
        out.push_back({Severity::Error, "not in universe",
                       std::string(to_string(k)) + " '" + id +
                           "' is not declared in the universe with that kind"});
  for (const auto &e : m.initial.edges)
    if (auto why = check_edge_domain(m.initial.vertices, m.schema.rights, e))
      out.push_back({Severity::Error, "edge domain", "initial edge " + *why});
  for (auto &d : acyclicity_diagnostics(m.initial, "initial state"))
    out.push_back(std::move(d));
  detail::check_commands(m, out);
  if (has_errors(out))
    return out;

  const Supergraph sg = assemble_supergraph(m);
  auto cyc = acyclicity_diagnostics(sg.graph, "supergraph");
  if (!cyc.empty()) {
    out.insert(out.end(), cyc.begin(), cyc.end());
    return out;
  }

  // Without creates the reachable states only shrink, so destroys are
  // only needed for the constraint encoding to be exact.
  bool any_create = false;
  for (const auto &c : m.commands)
    any_create = any_create || c.action == Action::Create;

  for (auto k : kAllEntityKinds) {
    if (!any_create || sg.graph.vertices.of(k).empty())
      continue;
    OpTarget t{k};
    bool ok = false;
    for (const auto &c : m.commands)
      ok = ok || (c.action == Action::Destroy && c.target == t);
    if (!ok)
      out.push_back({Severity::Error, "missing destroy",
                     "no destroy command for " + std::string(to_string(k)) +
                         " vertices"});
  }
  for (auto k : kAllEdgeKinds) {
    bool present = false;
    if (!any_create)
      continue;
    for (const auto &e : sg.edge_list)
      present = present || e.kind == k;
    if (!present)
      continue;
    OpTarget t{k};
    bool ok = false;
    for (const auto &c : m.commands)
      ok = ok || (c.action == Action::Destroy && c.target == t);
    if (!ok)
      out.push_back({Severity::Error, "missing destroy",
                     "no destroy command for " + std::string(to_string(k)) +
                         " edges"});
  }

  const CreationIndex idx = index_creators(m, sg);
  for (const auto &[ci, e] : idx.vacuous)
    out.push_back({Severity::Warning, "vacuous condition",
                   "command '" + m.commands[ci].name + "': condition " +
                       to_string(e) + " can never exist and is ignored"});

  std::vector<std::set<Index>> effective(sg.edge_list.size());
  for (Index e = 0; e < sg.edge_list.size(); ++e) {
    const auto &cs = idx.creators[e];
    effective[e] = idx.effective(e);
    if (cs.size() < 2)
      continue;
    bool same = true;
    for (const auto &c : cs)
      same = same && c.conditions == cs.front().conditions;
    if (same)
      out.push_back({Severity::Warning, "duplicate create",
                     std::to_string(cs.size()) + " commands create " +
                         to_string(sg.edge_list[e])});
    else
      out.push_back({strictness, "differing conditions",
                     "commands creating " + to_string(sg.edge_list[e]) +
                         " have different conditions"});
  }

  // A condition e' in the creates of e is only enforced in both directions
  // if e' (when creatable) is itself guarded by the absence of e.
  for (Index e = 0; e < sg.edge_list.size(); ++e)
    for (Index x : effective[e]) {
      if (x == e || idx.creators[x].empty() || effective[x].contains(e))
        continue;
      out.push_back({strictness, "asymmetric condition",
                     "creating " + to_string(sg.edge_list[e]) + " requires " +
                         to_string(sg.edge_list[x]) +
                         " to be absent, but not the other way round"});
    }

  for (auto it = m.initial.edges.begin(); it != m.initial.edges.end(); ++it) {
    const Index a = *sg.index_of(*it);
    for (auto jt = std::next(it); jt != m.initial.edges.end(); ++jt) {
      const Index b = *sg.index_of(*jt);
      if (effective[a].contains(b) || effective[b].contains(a))
        out.push_back({strictness, "initial constraint violation",
                       "initial edges " + to_string(*it) + " and " +
                           to_string(*jt) + " are mutually exclusive"});
    }
  }
  return out;
}

} // namespace ngacsafe

#endif // NGACSAFE_VALIDATE_HPP
