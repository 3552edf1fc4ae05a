#ifndef NGACSAFE_MODEL_HPP
#define NGACSAFE_MODEL_HPP

// Core value types of an NGAC model: entities, edges, state digraphs,
// primitive operations and mono-operational commands.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ngacsafe {

using EntityId = std::string;
using Right = std::string;

enum class EntityKind : std::uint8_t { User, UserAttr, Resource, ResourceAttr };

inline constexpr std::array<EntityKind, 4> kAllEntityKinds = {
    EntityKind::User, EntityKind::UserAttr, EntityKind::Resource,
    EntityKind::ResourceAttr};

enum class EdgeKind : std::uint8_t { UserAssign, ResAssign, Assoc, Prohib };

inline constexpr std::array<EdgeKind, 4> kAllEdgeKinds = {
    EdgeKind::UserAssign, EdgeKind::ResAssign, EdgeKind::Assoc,
    EdgeKind::Prohib};

inline constexpr std::string_view to_string(EntityKind k) {
  switch (k) {
  case EntityKind::User: return "user";
  case EntityKind::UserAttr: return "userAttribute";
  case EntityKind::Resource: return "resource";
  case EntityKind::ResourceAttr: return "resourceAttribute";
  }
  return "?";
}

inline constexpr std::string_view to_string(EdgeKind k) {
  switch (k) {
  case EdgeKind::UserAssign: return "userAssign";
  case EdgeKind::ResAssign: return "resAssign";
  case EdgeKind::Assoc: return "assoc";
  case EdgeKind::Prohib: return "prohib";
  }
  return "?";
}

inline constexpr bool is_labeled(EdgeKind k) {
  return k == EdgeKind::Assoc || k == EdgeKind::Prohib;
}

struct Edge {
  EdgeKind kind = EdgeKind::UserAssign;
  EntityId src;
  EntityId dst;
  std::optional<Right> label;

  friend auto operator<=>(const Edge &, const Edge &) = default;
  friend bool operator==(const Edge &, const Edge &) = default;
};

inline Edge user_assign(EntityId src, EntityId dst) {
  return {EdgeKind::UserAssign, std::move(src), std::move(dst), std::nullopt};
}
inline Edge res_assign(EntityId src, EntityId dst) {
  return {EdgeKind::ResAssign, std::move(src), std::move(dst), std::nullopt};
}
inline Edge assoc(EntityId ua, EntityId rsa, Right r) {
  return {EdgeKind::Assoc, std::move(ua), std::move(rsa), std::move(r)};
}
inline Edge prohib(EntityId ua, EntityId rsa, Right r) {
  return {EdgeKind::Prohib, std::move(ua), std::move(rsa), std::move(r)};
}

inline std::string to_string(const Edge &e) {
  std::string s;
  s += to_string(e.kind);
  s += '(';
  s += e.src;
  s += ',';
  s += e.dst;
  if (e.label) {
    s += ',';
    s += *e.label;
  }
  s += ')';
  return s;
}

/// Entity names partitioned by kind. Used both for the vertex set of a
/// state digraph and for the universe of all entities. The partition is not enforced
/// here so that overlaps can be reported by validation.
struct EntitySets {
  std::array<std::set<EntityId>, 4> by_kind;

  std::set<EntityId> &of(EntityKind k) {
    return by_kind[static_cast<std::size_t>(k)];
  }
  const std::set<EntityId> &of(EntityKind k) const {
    return by_kind[static_cast<std::size_t>(k)];
  }

  bool contains(const EntityId &id, EntityKind k) const {
    return of(k).contains(id);
  }

  /// First kind (in declaration order) holding `id`.
  std::optional<EntityKind> kind_of(const EntityId &id) const {
    for (auto k : kAllEntityKinds)
      if (of(k).contains(id))
        return k;
    return std::nullopt;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto &s : by_kind)
      n += s.size();
    return n;
  }

  friend bool operator==(const EntitySets &, const EntitySets &) = default;
  friend auto operator<=>(const EntitySets &, const EntitySets &) = default;
};

/// One state of the model: entities by kind plus assignment, association
/// and prohibition edges.
struct StateDigraph {
  EntitySets vertices;
  std::set<Edge> edges;

  bool has_vertex(const EntityId &id, EntityKind k) const {
    return vertices.contains(id, k);
  }
  bool has_edge(const Edge &e) const { return edges.contains(e); }

  friend bool operator==(const StateDigraph &, const StateDigraph &) = default;
  friend auto operator<=>(const StateDigraph &, const StateDigraph &) = default;
};

/// Static part of a model that every state operation needs: every entity
/// that may ever exist, and the rights.
struct Schema {
  EntitySets universe;
  std::set<Right> rights;

  friend bool operator==(const Schema &, const Schema &) = default;
};

enum class Action : std::uint8_t { Create, Destroy };

inline constexpr std::string_view to_string(Action a) {
  return a == Action::Create ? "create" : "destroy";
}

struct Vertex {
  EntityId id;
  EntityKind kind = EntityKind::User;

  friend auto operator<=>(const Vertex &, const Vertex &) = default;
  friend bool operator==(const Vertex &, const Vertex &) = default;
};

/// One of the 16 primitive operations, bound to a concrete target.
struct PrimitiveOp {
  Action action = Action::Create;
  std::variant<Vertex, Edge> target;

  friend bool operator==(const PrimitiveOp &, const PrimitiveOp &) = default;
};

/// What a command's single primitive operation acts on: one of the four
/// vertex kinds or one of the four edge kinds.
struct OpTarget {
  std::variant<EntityKind, EdgeKind> type;

  bool is_edge() const { return std::holds_alternative<EdgeKind>(type); }
  EntityKind vertex_kind() const { return std::get<EntityKind>(type); }
  EdgeKind edge_kind() const { return std::get<EdgeKind>(type); }

  friend bool operator==(const OpTarget &, const OpTarget &) = default;
  friend auto operator<=>(const OpTarget &, const OpTarget &) = default;
};

inline std::string_view to_string(const OpTarget &t) {
  return t.is_edge() ? to_string(t.edge_kind()) : to_string(t.vertex_kind());
}

/// Actual parameter of a command: an entity name for vertex operations, an
/// edge for edge operations.
using Argument = std::variant<EntityId, Edge>;

inline std::string to_string(const Argument &a) {
  if (const auto *id = std::get_if<EntityId>(&a))
    return *id;
  return to_string(std::get<Edge>(a));
}

/// Mono-operational command `name(X): if X == guard and absent... not in G
/// then <action> <target> X`.
struct Command {
  std::string name;
  Action action = Action::Create;
  OpTarget target;
  std::optional<Edge> guard;
  std::set<Edge> absent;

  friend bool operator==(const Command &, const Command &) = default;
};

struct NgacModel {
  Schema schema;
  StateDigraph initial;
  std::vector<Command> commands;

  friend bool operator==(const NgacModel &, const NgacModel &) = default;
};

/// A command application inside a replayable sequence.
struct Step {
  Command command;
  Argument argument;

  friend bool operator==(const Step &, const Step &) = default;
};

using CommandSequence = std::vector<Step>;

class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Size guard of an exponential routine was exceeded.
class SizeGuardExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured work limit (e.g. maximum MIS count) was reached.
class ResourceExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ngacsafe

#endif // NGACSAFE_MODEL_HPP
