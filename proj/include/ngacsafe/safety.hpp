#ifndef NGACSAFE_SAFETY_HPP
#define NGACSAFE_SAFETY_HPP

// Safety decision: a model is unsafe iff, for some initially absent access
// tuple (u, rs, r), the supergraph restricted to right r holds a u-rs path
// whose edges are independent in the constraint graph.

#include <ngacsafe/access.hpp>
#include <ngacsafe/dacc.hpp>
#include <ngacsafe/diagnostics.hpp>
#include <ngacsafe/model.hpp>
#include <ngacsafe/state_ops.hpp>
#include <ngacsafe/supergraph.hpp>
#include <ngacsafe/validate.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace ngacsafe {

/// Supergraph edges usable for one right, as a DAG. Edge i of `dag` is
/// supergraph edge `origin[i]`.
struct RightDag {
  Dag dag;
  std::vector<Index> origin;
};

/// Keeps assignments and the associations labeled `right`; drops other
/// associations and every prohibition.
inline RightDag restrict_to_right(const Supergraph &sg, const Right &right) {
  std::vector<std::string> names;
  for (auto k : kAllEntityKinds)
    for (const auto &id : sg.graph.vertices.of(k))
      names.push_back(id);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::map<std::string, Index> pos;
  for (Index i = 0; i < names.size(); ++i)
    pos.emplace(names[i], i);

  std::vector<IndexPair> edges;
  std::vector<Index> origin;
  for (Index i = 0; i < sg.edge_list.size(); ++i) {
    const Edge &e = sg.edge_list[i];
    if (e.kind == EdgeKind::Prohib)
      continue;
    if (e.kind == EdgeKind::Assoc && e.label != right)
      continue;
    edges.emplace_back(pos.at(e.src), pos.at(e.dst));
    origin.push_back(i);
  }
  return {Dag(std::move(names), std::move(edges)), std::move(origin)};
}

class InvalidTarget : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const Command *find_destroy(const NgacModel &m, OpTarget t) {
  for (const auto &c : m.commands)
    if (c.action == Action::Destroy && c.target == t && !c.guard &&
        c.absent.empty())
      return &c;
  return nullptr;
}

inline const Command *find_vertex_create(const NgacModel &m, EntityKind k) {
  for (const auto &c : m.commands)
    if (c.action == Action::Create && c.target == OpTarget{k})
      return &c;
  return nullptr;
}

} // namespace detail

/// Command sequence taking the initial state to `target`: destroys of
/// initial elements missing from `target`, then creates of new vertices,
/// then creates of new edges. Throws InvalidTarget unless `target` is a
/// valid subgraph of the supergraph.
inline CommandSequence reconstruct_command_sequence(const NgacModel &m,
                                                    const Supergraph &sg,
                                                    const ConstraintGraph &cg,
                                                    const StateDigraph &target) {
  for (auto k : kAllEntityKinds)
    for (const auto &id : target.vertices.of(k))
      if (!sg.graph.has_vertex(id, k))
        throw InvalidTarget("vertex '" + id + "' is not in the supergraph");
  std::vector<Index> idx;
  for (const auto &e : target.edges) {
    auto i = sg.index_of(e);
    if (!i)
      throw InvalidTarget(to_string(e) + " is not in the supergraph");
    if (!target.vertices.kind_of(e.src) || !target.vertices.kind_of(e.dst))
      throw InvalidTarget(to_string(e) + " has an endpoint outside the target");
    idx.push_back(*i);
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (cg.adjacent(idx[a], idx[b]))
        throw InvalidTarget("target holds conflicting edges " +
                            to_string(sg.edge_list[idx[a]]) + " and " +
                            to_string(sg.edge_list[idx[b]]));

  CommandSequence seq;
  std::set<EntityId> dropped;
  for (auto k : kAllEntityKinds)
    for (const auto &id : m.initial.vertices.of(k)) {
      if (target.has_vertex(id, k))
        continue;
      const Command *c = detail::find_destroy(m, OpTarget{k});
      if (c == nullptr)
        throw InvalidTarget("no destroy command for " +
                            std::string(to_string(k)) + " '" + id + "'");
      seq.push_back({*c, id});
      dropped.insert(id);
    }
  for (const auto &e : m.initial.edges) {
    if (target.has_edge(e) || dropped.contains(e.src) || dropped.contains(e.dst))
      continue;
    const Command *c = detail::find_destroy(m, OpTarget{e.kind});
    if (c == nullptr)
      throw InvalidTarget("no destroy command for " + to_string(e));
    seq.push_back({*c, e});
  }
  for (auto k : kAllEntityKinds)
    for (const auto &id : target.vertices.of(k)) {
      if (m.initial.has_vertex(id, k))
        continue;
      const Command *c = detail::find_vertex_create(m, k);
      if (c == nullptr)
        throw InvalidTarget("no create command for " +
                            std::string(to_string(k)) + " '" + id + "'");
      seq.push_back({*c, id});
    }
  for (const auto &e : target.edges) {
    if (m.initial.has_edge(e))
      continue;
    const Command *chosen = nullptr;
    for (const auto &c : m.commands) {
      if (!creates_edge(c, e))
        continue;
      bool ok = std::none_of(c.absent.begin(), c.absent.end(),
                             [&](const Edge &x) { return target.has_edge(x); });
      if (ok) {
        chosen = &c;
        break;
      }
    }
    if (chosen == nullptr)
      throw InvalidTarget("no create command for " + to_string(e) +
                          " is enabled in the target");
    seq.push_back({*chosen, e});
  }
  return seq;
}

inline CommandSequence reconstruct_command_sequence(const NgacModel &m,
                                                    const StateDigraph &target) {
  const Supergraph sg = build_supergraph(m);
  return reconstruct_command_sequence(m, sg, build_constraint_graph(m, sg),
                                      target);
}

/// Certificate check for unsafety: no access initially, access after
/// replaying `seq`. Every step must use a command of the model.
inline bool verify_unsafety_certificate(const NgacModel &m,
                                        const EntityId &user,
                                        const EntityId &resource,
                                        const Right &right,
                                        const CommandSequence &seq) {
  if (access_holds(m.initial, user, right, resource))
    return false;
  for (const auto &step : seq)
    if (std::find(m.commands.begin(), m.commands.end(), step.command) ==
        m.commands.end())
      return false;
  const StateDigraph end = replay(m.schema, m.initial, seq);
  return access_holds(end, user, right, resource);
}

enum class CandidateScope {
  Initial,     // U x R of the initial state
  AllPotential // every user and resource of the supergraph
};

struct SafetyOptions {
  CandidateScope scope = CandidateScope::Initial;
  unsigned jobs = 1;
  bool lenient = false;
  /// Drop destroys that the witness does not need.
  bool minimize_witness = true;
  /// Per-tuple MIS limit; 0 means unlimited.
  std::size_t max_mis = 0;
};

struct SafetyWitness {
  EntityId user;
  EntityId resource;
  Right right;
  CommandSequence sequence;
  std::vector<EntityId> path;
};

struct SafetyStats {
  std::size_t tuples_checked = 0;
  std::size_t mis_enumerated = 0;
  std::size_t max_mis_per_tuple = 0;
  std::size_t constraint_vertices = 0; // largest per-right constraint graph
};

struct SafetyVerdict {
  bool safe = true;
  std::optional<SafetyWitness> witness;
  /// The witness replays to new access. Always true for models accepted
  /// in strict mode.
  bool certified = false;
  SafetyStats stats;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

struct Tuple {
  EntityId user;
  EntityId resource;
  Right right;
};

// Smallest valid subgraph holding `path_edges` plus as much of the initial
// state as stays conflict-free.
inline StateDigraph witness_target(const NgacModel &m, const Supergraph &sg,
                                   const ConstraintGraph &cg,
                                   const std::vector<Index> &path_edges) {
  StateDigraph t;
  t.vertices = m.initial.vertices;
  std::vector<Index> kept;
  for (Index i : path_edges) {
    const Edge &e = sg.edge_list[i];
    t.edges.insert(e);
    kept.push_back(i);
    for (const auto *id : {&e.src, &e.dst})
      for (auto k : kAllEntityKinds)
        if (sg.graph.has_vertex(*id, k))
          t.vertices.of(k).insert(*id);
  }
  for (const auto &e : m.initial.edges) {
    Index i = *sg.index_of(e);
    bool clash = std::any_of(kept.begin(), kept.end(),
                             [&](Index j) { return cg.adjacent(i, j); });
    if (!clash && !t.edges.contains(e)) {
      t.edges.insert(e);
      kept.push_back(i);
    }
  }
  return t;
}

inline CommandSequence minimize(const NgacModel &m, const Tuple &t,
                                CommandSequence seq) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (seq[i].command.action != Action::Destroy)
      continue;
    CommandSequence trial = seq;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (verify_unsafety_certificate(m, t.user, t.resource, t.right, trial))
      seq = std::move(trial);
  }
  return seq;
}

} // namespace detail

/// Decides safety. Throws ModelRejected when validation reports errors.
inline SafetyVerdict check_safety(const NgacModel &m,
                                  const SafetyOptions &opts = {}) {
  SafetyVerdict verdict;
  verdict.diagnostics = validate_model(m, {opts.lenient});
  if (has_errors(verdict.diagnostics))
    throw ModelRejected(verdict.diagnostics);

  const Supergraph sg = build_supergraph(m);
  const ConstraintGraph cg = build_constraint_graph(m, sg);

  const auto &pool = opts.scope == CandidateScope::Initial ? m.initial
                                                           : sg.graph;
  std::map<Right, AccessRelation> before;
  for (const auto &r : m.schema.rights)
    before.emplace(r, access_relation(m.initial, r));

  std::vector<detail::Tuple> tuples;
  for (const auto &u : pool.vertices.of(EntityKind::User))
    for (const auto &rs : pool.vertices.of(EntityKind::Resource))
      for (const auto &r : m.schema.rights)
        if (!before.at(r).contains({u, rs}))
          tuples.push_back({u, rs, r});

  struct PerRight {
    RightDag rd;
    ConstraintGraph cg;
  };
  std::map<Right, PerRight> per_right;
  for (const auto &r : m.schema.rights) {
    RightDag rd = restrict_to_right(sg, r);
    ConstraintGraph sub = cg.induced(rd.origin);
    verdict.stats.constraint_vertices =
        std::max(verdict.stats.constraint_vertices, sub.size());
    per_right.emplace(r, PerRight{std::move(rd), std::move(sub)});
  }

  struct Outcome {
    bool done = false;
    DaccVerdict dacc;
  };
  std::vector<Outcome> outcomes(tuples.size());
  auto solve = [&](std::size_t i) {
    const auto &t = tuples[i];
    const auto &pr = per_right.at(t.right);
    DaccInstance inst(pr.rd.dag, pr.cg, *pr.rd.dag.index_of(t.user),
                      *pr.rd.dag.index_of(t.resource));
    outcomes[i].dacc = solve_dacc(inst, {opts.max_mis});
    outcomes[i].done = true;
  };

  std::optional<std::size_t> hit;
  if (opts.jobs <= 1) {
    for (std::size_t i = 0; i < tuples.size() && !hit; ++i) {
      solve(i);
      if (outcomes[i].dacc.reachable)
        hit = i;
    }
  } else {
    // Workers skip tuples past the best hit so far; the reported tuple is
    // the first in order regardless of completion order.
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{tuples.size()};
    std::mutex err_mu;
    std::exception_ptr err;
    auto work = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tuples.size() || i > best.load())
          return;
        try {
          solve(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err)
            err = std::current_exception();
          return;
        }
        if (outcomes[i].dacc.reachable) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    std::vector<std::thread> pool_threads;
    for (unsigned j = 0; j < opts.jobs; ++j)
      pool_threads.emplace_back(work);
    for (auto &th : pool_threads)
      th.join();
    if (err)
      std::rethrow_exception(err);
    if (best.load() < tuples.size())
      hit = best.load();
  }

  for (const auto &o : outcomes) {
    if (!o.done)
      continue;
    ++verdict.stats.tuples_checked;
    verdict.stats.mis_enumerated += o.dacc.mis_enumerated;
    verdict.stats.max_mis_per_tuple =
        std::max(verdict.stats.max_mis_per_tuple, o.dacc.mis_enumerated);
  }
  if (!hit)
    return verdict;

  const auto &t = tuples[*hit];
  const auto &pr = per_right.at(t.right);
  const auto &dv = outcomes[*hit].dacc;
  std::vector<Index> sg_path_edges;
  for (Index e : path_edges(pr.rd.dag, *dv.path))
    sg_path_edges.push_back(pr.rd.origin[e]);

  SafetyWitness w{t.user, t.resource, t.right, {}, {}};
  for (Index v : *dv.path)
    w.path.push_back(pr.rd.dag.name(v));
  const StateDigraph target = detail::witness_target(m, sg, cg, sg_path_edges);
  try {
    w.sequence = reconstruct_command_sequence(m, sg, cg, target);
  } catch (const InvalidTarget &) {
    // Only reachable in lenient mode, where the constraint graph may
    // over-approximate.
  }
  if (opts.minimize_witness &&
      verify_unsafety_certificate(m, t.user, t.resource, t.right, w.sequence))
    w.sequence = detail::minimize(m, t, std::move(w.sequence));
  verdict.certified =
      verify_unsafety_certificate(m, t.user, t.resource, t.right, w.sequence);
  verdict.safe = false;
  verdict.witness = std::move(w);
  return verdict;
}

} // namespace ngacsafe

#endif // NGACSAFE_SAFETY_HPP
