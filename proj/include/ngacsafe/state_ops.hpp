#ifndef NGACSAFE_STATE_OPS_HPP
#define NGACSAFE_STATE_OPS_HPP

#include <ngacsafe/model.hpp>

#include <optional>
#include <string>

namespace ngacsafe {

/// Endpoint kinds an edge of `kind` must connect. Assignment edges accept
/// two source kinds; the second entry is the alternative.
struct EdgeDomain {
  std::array<EntityKind, 2> src;
  EntityKind dst;
};

inline constexpr EdgeDomain edge_domain(EdgeKind k) {
  switch (k) {
  case EdgeKind::UserAssign:
    return {{EntityKind::User, EntityKind::UserAttr}, EntityKind::UserAttr};
  case EdgeKind::ResAssign:
    return {{EntityKind::ResourceAttr, EntityKind::ResourceAttr},
            EntityKind::Resource};
  case EdgeKind::Assoc:
  case EdgeKind::Prohib:
    break;
  }
  return {{EntityKind::UserAttr, EntityKind::UserAttr},
          EntityKind::ResourceAttr};
}

/// Checks (src,dst) in (U x UA) u (UA x UA), (RA x R) u (RA x RA), or
/// UA x RA x rights against the given vertex sets. Returns a failure
/// description, or nothing when the edge is in its domain.
inline std::optional<std::string> check_edge_domain(const EntitySets &vertices,
                                                    const std::set<Right> &rights,
                                                    const Edge &e) {
  if (is_labeled(e.kind)) {
    if (!e.label)
      return to_string(e) + " requires a right label";
    if (!rights.contains(*e.label))
      return to_string(e) + " is labeled with unknown right '" + *e.label + "'";
  } else if (e.label) {
    return to_string(e) + " must not carry a label";
  }
  const auto dom = edge_domain(e.kind);
  bool src_ok = vertices.contains(e.src, dom.src[0]) ||
                vertices.contains(e.src, dom.src[1]);
  // A resource assignment also admits RA -> RA.
  bool dst_ok = vertices.contains(e.dst, dom.dst) ||
                (e.kind == EdgeKind::ResAssign &&
                 vertices.contains(e.dst, EntityKind::ResourceAttr));
  if (!src_ok || !dst_ok)
    return to_string(e) + " is outside its endpoint domain";
  return std::nullopt;
}

/// Condition column of the primitive-operation table. Returns the failed
/// condition, or nothing when the operation may be applied.
inline std::optional<std::string> failed_condition(const Schema &schema,
                                                   const StateDigraph &state,
                                                   const PrimitiveOp &op) {
  if (const auto *v = std::get_if<Vertex>(&op.target)) {
    if (op.action == Action::Create) {
      if (state.has_vertex(v->id, v->kind))
        return "create " + std::string(to_string(v->kind)) + " " + v->id +
               ": already present";
      if (!schema.universe.contains(v->id, v->kind))
        return "create " + std::string(to_string(v->kind)) + " " + v->id +
               ": not in universe";
      return std::nullopt;
    }
    if (!state.has_vertex(v->id, v->kind))
      return "destroy " + std::string(to_string(v->kind)) + " " + v->id +
             ": not present";
    return std::nullopt;
  }
  const auto &e = std::get<Edge>(op.target);
  if (op.action == Action::Create) {
    if (state.has_edge(e))
      return "create " + to_string(e) + ": already present";
    if (auto why = check_edge_domain(state.vertices, schema.rights, e))
      return "create " + *why;
    return std::nullopt;
  }
  if (!state.has_edge(e))
    return "destroy " + to_string(e) + ": not present";
  return std::nullopt;
}

namespace detail {

inline void apply_unchecked(StateDigraph &s, const PrimitiveOp &op) {
  if (const auto *v = std::get_if<Vertex>(&op.target)) {
    if (op.action == Action::Create) {
      s.vertices.of(v->kind).insert(v->id);
      return;
    }
    s.vertices.of(v->kind).erase(v->id);
    std::erase_if(s.edges, [&](const Edge &e) {
      return e.src == v->id || e.dst == v->id;
    });
    return;
  }
  const auto &e = std::get<Edge>(op.target);
  if (op.action == Action::Create)
    s.edges.insert(e);
  else
    s.edges.erase(e);
}

} // namespace detail

/// Applies one primitive operation. Destroying a vertex also removes every
/// edge incident to it.
inline StateDigraph apply_primitive_op(const Schema &schema,
                                       const StateDigraph &state,
                                       const PrimitiveOp &op) {
  if (auto why = failed_condition(schema, state, op))
    throw PreconditionError(*why);
  StateDigraph next = state;
  detail::apply_unchecked(next, op);
  return next;
}

/// Binds a command's formal parameter to `arg`.
inline PrimitiveOp bind(const Command &cmd, const Argument &arg) {
  if (cmd.target.is_edge()) {
    const auto *e = std::get_if<Edge>(&arg);
    if (e == nullptr || e->kind != cmd.target.edge_kind())
      throw InvalidArgument("command '" + cmd.name + "' expects a " +
                            std::string(to_string(cmd.target)) + " edge");
    return {cmd.action, *e};
  }
  const auto *id = std::get_if<EntityId>(&arg);
  if (id == nullptr)
    throw InvalidArgument("command '" + cmd.name + "' expects an entity");
  return {cmd.action, Vertex{*id, cmd.target.vertex_kind()}};
}

/// True when the command's guard, absence conditions and the primitive
/// operation's own condition all hold for `arg` in `state`.
inline bool command_enabled(const Schema &schema, const StateDigraph &state,
                            const Command &cmd, const Argument &arg) {
  const PrimitiveOp op = bind(cmd, arg);
  if (cmd.guard && std::get<Edge>(op.target) != *cmd.guard)
    return false;
  for (const auto &e : cmd.absent)
    if (state.has_edge(e))
      return false;
  return !failed_condition(schema, state, op).has_value();
}

/// Runs a command. A failed guard or condition leaves the state unchanged.
/// Throws InvalidArgument when `arg` does not fit the command's target.
inline StateDigraph execute_command(const Schema &schema,
                                    const StateDigraph &state,
                                    const Command &cmd, const Argument &arg) {
  if (!command_enabled(schema, state, cmd, arg))
    return state;
  StateDigraph next = state;
  detail::apply_unchecked(next, bind(cmd, arg));
  return next;
}

/// Replays a sequence; malformed steps are skipped.
inline StateDigraph replay(const Schema &schema, StateDigraph state,
                           const CommandSequence &seq) {
  for (const auto &step : seq) {
    try {
      state = execute_command(schema, state, step.command, step.argument);
    } catch (const InvalidArgument &) {
    }
  }
  return state;
}

} // namespace ngacsafe

#endif // NGACSAFE_STATE_OPS_HPP
