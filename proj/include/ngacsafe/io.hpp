#ifndef NGACSAFE_IO_HPP
#define NGACSAFE_IO_HPP

// JSON documents: models, DACC instances, simple graphs and constraint
// graphs. Every document carries "schema": "ngacsafe/1". See
// docs/schema.md.

#include <ngacsafe/dacc.hpp>
#include <ngacsafe/graph.hpp>
#include <ngacsafe/model.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ngacsafe::io {

using nlohmann::json;

inline constexpr std::string_view kSchema = "ngacsafe/1";

/// Malformed document. `line`/`column` locate the problem in the text
/// (1-based, 0 when unknown); `pointer` is set for structural problems.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + msg),
        message_(msg), line_(line), column_(column) {}
  ParseError(const std::string &msg, std::string pointer)
      : std::runtime_error((pointer.empty() ? "/" : pointer) + ": " + msg),
        message_(msg), pointer_(std::move(pointer)) {}
  ParseError(const std::string &msg, std::string pointer, std::size_t line,
             std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + " (" +
                           (pointer.empty() ? "/" : pointer) + "): " + msg),
        message_(msg), pointer_(std::move(pointer)), line_(line),
        column_(column) {}

  const std::string &message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &pointer() const { return pointer_; }

private:
  std::string message_;
  std::string pointer_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Finds where the value at a JSON pointer starts. Only run on text that
// already parsed, so the scanner can be forgiving.
class Locator {
public:
  Locator(std::string_view text, std::string target)
      : t_(text), target_(std::move(target)) {}

  std::optional<std::size_t> find() {
    value("");
    return hit_;
  }

private:
  char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }
  void ws() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_])))
      ++i_;
  }

  std::string str() {
    std::string out;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\' && i_ + 1 < t_.size()) {
        out += t_[i_ + 1];
        i_ += 2;
      } else {
        out += t_[i_++];
      }
    }
    ++i_;
    return out;
  }

  static std::string escape(const std::string &key) {
    std::string out;
    for (char c : key) {
      if (c == '~')
        out += "~0";
      else if (c == '/')
        out += "~1";
      else
        out += c;
    }
    return out;
  }

  void value(const std::string &path) {
    ws();
    if (hit_)
      return;
    if (path == target_)
      hit_ = i_;
    const char c = peek();
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      if (peek() == close) {
        ++i_;
        return;
      }
      for (std::size_t n = 0; i_ < t_.size(); ++n) {
        ws();
        std::string child;
        if (c == '{') {
          child = path + "/" + escape(str());
          ws();
          ++i_; // ':'
        } else {
          child = path + "/" + std::to_string(n);
        }
        value(child);
        ws();
        if (peek() != ',')
          break;
        ++i_;
      }
      ++i_;
    } else if (c == '"') {
      str();
    } else {
      while (i_ < t_.size() && std::string_view(",]} \t\r\n").find(t_[i_]) ==
                                   std::string_view::npos)
        ++i_;
    }
  }

  std::string_view t_;
  std::string target_;
  std::size_t i_ = 0;
  std::optional<std::size_t> hit_;
};

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    // Byte offset of the failing token -> 1-based line/column.
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto c = msg.find("column"); c != std::string::npos)
      if (auto p = msg.find(": ", c); p != std::string::npos)
        msg = msg.substr(p + 2);
    throw ParseError(msg, line, col);
  }
}

// Structural access with JSON-pointer-anchored errors.
class Reader {
public:
  Reader(const json &j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {}

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, ptr_);
  }

  const json &raw() const { return j_; }
  const std::string &pointer() const { return ptr_; }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!j_.is_object())
      fail("expected an object");
    for (const auto &[k, _] : j_.items()) {
      bool ok = false;
      for (auto a : allowed)
        ok = ok || k == a;
      if (!ok)
        Reader(j_[k], ptr_ + "/" + k).fail("unknown field '" + k + "'");
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }

  Reader at(std::string_view key) const {
    if (!j_.is_object() || !j_.contains(key))
      fail("missing field '" + std::string(key) + "'");
    return Reader(j_.at(std::string(key)), ptr_ + "/" + std::string(key));
  }

  Reader at(std::size_t i) const {
    return Reader(j_.at(i), ptr_ + "/" + std::to_string(i));
  }

  std::vector<Reader> array() const {
    if (!j_.is_array())
      fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < j_.size(); ++i)
      out.push_back(at(i));
    return out;
  }

  std::string str() const {
    if (!j_.is_string())
      fail("expected a string");
    return j_.get<std::string>();
  }

  std::size_t index() const {
    if (!j_.is_number_unsigned())
      fail("expected a non-negative integer");
    return j_.get<std::size_t>();
  }

private:
  const json &j_;
  std::string ptr_;
};

inline void check_schema(const Reader &r) {
  if (r.has("schema") && r.at("schema").str() != kSchema)
    r.at("schema").fail("unsupported schema, expected '" + std::string(kSchema) +
                        "'");
}

inline constexpr std::array<std::string_view, 4> kKindKeys = {
    "users", "userAttributes", "resources", "resourceAttributes"};

inline EntityKind entity_kind(const Reader &r) {
  const std::string s = r.str();
  for (auto k : kAllEntityKinds)
    if (s == to_string(k))
      return k;
  r.fail("unknown entity kind '" + s + "'");
}

inline EdgeKind edge_kind(const Reader &r) {
  const std::string s = r.str();
  for (auto k : kAllEdgeKinds)
    if (s == to_string(k))
      return k;
  r.fail("unknown edge kind '" + s + "'");
}

inline EntitySets entity_sets(const Reader &r, bool allow_edges) {
  if (allow_edges)
    r.expect_object({"users", "userAttributes", "resources",
                     "resourceAttributes", "edges"});
  else
    r.expect_object({"users", "userAttributes", "resources",
                     "resourceAttributes"});
  EntitySets s;
  for (std::size_t i = 0; i < kAllEntityKinds.size(); ++i) {
    if (!r.has(kKindKeys[i]))
      continue;
    for (const auto &e : r.at(kKindKeys[i]).array())
      s.of(kAllEntityKinds[i]).insert(e.str());
  }
  return s;
}

inline Edge edge(const Reader &r) {
  r.expect_object({"kind", "src", "dst", "right"});
  Edge e{edge_kind(r.at("kind")), r.at("src").str(), r.at("dst").str(),
         std::nullopt};
  if (r.has("right"))
    e.label = r.at("right").str();
  return e;
}

inline json entity_sets_json(const EntitySets &s) {
  json j = json::object();
  for (std::size_t i = 0; i < kAllEntityKinds.size(); ++i)
    j[std::string(kKindKeys[i])] = s.of(kAllEntityKinds[i]);
  return j;
}

} // namespace detail

inline json to_json(const Edge &e) {
  json j{{"kind", std::string(to_string(e.kind))}, {"src", e.src}, {"dst", e.dst}};
  if (e.label)
    j["right"] = *e.label;
  return j;
}

inline json to_json(const Argument &a) {
  if (const auto *id = std::get_if<EntityId>(&a))
    return *id;
  return to_json(std::get<Edge>(a));
}

inline json to_json(const Command &c) {
  json j{{"name", c.name},
         {"action", std::string(to_string(c.action))},
         {"target", std::string(to_string(c.target))}};
  if (c.guard)
    j["guard"] = to_json(*c.guard);
  if (!c.absent.empty()) {
    json a = json::array();
    for (const auto &e : c.absent)
      a.push_back(to_json(e));
    j["absent"] = std::move(a);
  }
  return j;
}

inline json to_json(const StateDigraph &s) {
  json j = detail::entity_sets_json(s.vertices);
  json es = json::array();
  for (const auto &e : s.edges)
    es.push_back(to_json(e));
  j["edges"] = std::move(es);
  return j;
}

inline json to_json(const NgacModel &m) {
  json cmds = json::array();
  for (const auto &c : m.commands)
    cmds.push_back(to_json(c));
  return json{{"schema", std::string(kSchema)},
              {"rights", m.schema.rights},
              {"universe", detail::entity_sets_json(m.schema.universe)},
              {"initial", to_json(m.initial)},
              {"commands", std::move(cmds)}};
}

inline std::string serialize_policy(const NgacModel &m) {
  return to_json(m).dump(2) + "\n";
}

inline Command command_from(const detail::Reader &r) {
  r.expect_object({"name", "action", "target", "guard", "absent"});
  Command c;
  c.name = r.at("name").str();
  const auto act = r.at("action");
  const std::string a = act.str();
  if (a == "create")
    c.action = Action::Create;
  else if (a == "destroy")
    c.action = Action::Destroy;
  else
    act.fail("unknown action '" + a + "'");
  const auto tgt = r.at("target");
  const std::string t = tgt.str();
  bool found = false;
  for (auto k : kAllEntityKinds)
    if (t == to_string(k)) {
      c.target = OpTarget{k};
      found = true;
    }
  for (auto k : kAllEdgeKinds)
    if (t == to_string(k)) {
      c.target = OpTarget{k};
      found = true;
    }
  if (!found)
    tgt.fail("unknown target kind '" + t + "'");
  if (r.has("guard"))
    c.guard = detail::edge(r.at("guard"));
  if (r.has("absent"))
    for (const auto &e : r.at("absent").array())
      c.absent.insert(detail::edge(e));
  return c;
}

inline Argument argument_from(const detail::Reader &r) {
  if (r.raw().is_string())
    return r.str();
  return detail::edge(r);
}

inline NgacModel model_from_json(const json &j) {
  detail::Reader r(j, "");
  r.expect_object({"schema", "rights", "universe", "initial", "commands"});
  detail::check_schema(r);
  NgacModel m;
  for (const auto &x : r.at("rights").array())
    m.schema.rights.insert(x.str());
  m.schema.universe = detail::entity_sets(r.at("universe"), false);
  const auto init = r.at("initial");
  m.initial.vertices = detail::entity_sets(init, true);
  if (init.has("edges"))
    for (const auto &e : init.at("edges").array())
      m.initial.edges.insert(detail::edge(e));
  if (r.has("commands"))
    for (const auto &c : r.at("commands").array())
      m.commands.push_back(command_from(c));
  return m;
}

namespace detail {

// Parses `text` and converts it, adding line/column to structural errors.
template <class Convert>
auto anchored(std::string_view text, Convert convert) {
  const json j = parse_text(text);
  try {
    return convert(j);
  } catch (const ParseError &e) {
    if (e.line() != 0)
      throw;
    const auto at = Locator(text, e.pointer()).find();
    if (!at)
      throw;
    const auto [line, col] = line_column(text, *at);
    throw ParseError(e.message(), e.pointer(), line, col);
  }
}

} // namespace detail

/// Parses a model document. Throws ParseError.
inline NgacModel parse_policy(std::string_view text) {
  return detail::anchored(text, model_from_json);
}

inline json to_json(const DaccInstance &inst) {
  const Dag &d = inst.dag();
  json edges = json::array();
  for (auto [a, b] : d.edges())
    edges.push_back({d.name(a), d.name(b)});
  json cs = json::array();
  for (auto [a, b] : inst.constraints().conflicts())
    cs.push_back({a, b});
  return json{{"schema", std::string(kSchema)},
              {"vertices", d.names()},
              {"edges", std::move(edges)},
              {"conflicts", std::move(cs)},
              {"source", d.name(inst.source())},
              {"target", d.name(inst.target())}};
}

namespace detail {

inline std::pair<std::string, std::string> name_pair(const Reader &r) {
  auto xs = r.array();
  if (xs.size() != 2)
    r.fail("expected a pair");
  return {xs[0].str(), xs[1].str()};
}

inline std::pair<Index, Index> index_pair(const Reader &r) {
  auto xs = r.array();
  if (xs.size() != 2)
    r.fail("expected a pair");
  return {xs[0].index(), xs[1].index()};
}

inline std::vector<std::string> names(const Reader &r) {
  std::vector<std::string> out;
  for (const auto &x : r.array())
    out.push_back(x.str());
  return out;
}

template <typename F> auto rethrow_as_parse(const Reader &r, F &&f) {
  try {
    return f();
  } catch (const InvalidArgument &e) {
    r.fail(e.what());
  }
}

} // namespace detail

inline DaccInstance dacc_from_json(const json &j) {
  detail::Reader r(j, "");
  r.expect_object({"schema", "vertices", "edges", "conflicts", "source", "target"});
  detail::check_schema(r);
  auto names = detail::names(r.at("vertices"));
  std::map<std::string, Index> pos;
  for (Index i = 0; i < names.size(); ++i)
    pos.emplace(names[i], i);
  auto lookup = [&](const detail::Reader &at, const std::string &n) {
    auto it = pos.find(n);
    if (it == pos.end())
      at.fail("unknown vertex '" + n + "'");
    return it->second;
  };
  std::vector<IndexPair> edges;
  for (const auto &e : r.at("edges").array()) {
    auto [a, b] = detail::name_pair(e);
    edges.emplace_back(lookup(e, a), lookup(e, b));
  }
  std::vector<IndexPair> cs;
  if (r.has("conflicts"))
    for (const auto &c : r.at("conflicts").array())
      cs.push_back(detail::index_pair(c));
  const Index s = lookup(r.at("source"), r.at("source").str());
  const Index t = lookup(r.at("target"), r.at("target").str());
  return detail::rethrow_as_parse(r, [&] {
    const std::size_t m = edges.size();
    return DaccInstance(Dag(std::move(names), std::move(edges)),
                        ConstraintGraph(m, std::move(cs)), s, t);
  });
}

inline json to_json(const SimpleGraph &g) {
  json edges = json::array();
  for (auto [a, b] : g.edges)
    edges.push_back({g.vertices[a], g.vertices[b]});
  return json{{"schema", std::string(kSchema)},
              {"vertices", g.vertices},
              {"edges", std::move(edges)}};
}

inline SimpleGraph simple_graph_from_json(const json &j) {
  detail::Reader r(j, "");
  r.expect_object({"schema", "vertices", "edges"});
  detail::check_schema(r);
  auto names = detail::names(r.at("vertices"));
  std::map<std::string, Index> pos;
  for (Index i = 0; i < names.size(); ++i)
    pos.emplace(names[i], i);
  std::vector<IndexPair> edges;
  if (r.has("edges"))
    for (const auto &e : r.at("edges").array()) {
      auto [a, b] = detail::name_pair(e);
      if (!pos.contains(a) || !pos.contains(b))
        e.fail("unknown vertex");
      edges.emplace_back(pos.at(a), pos.at(b));
    }
  return detail::rethrow_as_parse(
      r, [&] { return SimpleGraph::make(std::move(names), std::move(edges)); });
}

inline json to_json(const ConstraintGraph &g) {
  json cs = json::array();
  for (auto [a, b] : g.conflicts())
    cs.push_back({a, b});
  return json{{"schema", std::string(kSchema)},
              {"vertices", g.size()},
              {"conflicts", std::move(cs)}};
}

inline ConstraintGraph constraint_graph_from_json(const json &j) {
  detail::Reader r(j, "");
  r.expect_object({"schema", "vertices", "conflicts"});
  detail::check_schema(r);
  const std::size_t n = r.at("vertices").index();
  std::vector<IndexPair> cs;
  if (r.has("conflicts"))
    for (const auto &c : r.at("conflicts").array())
      cs.push_back(detail::index_pair(c));
  return detail::rethrow_as_parse(
      r, [&] { return ConstraintGraph(n, std::move(cs)); });
}

inline DaccInstance parse_dacc(std::string_view text) {
  return detail::anchored(text, dacc_from_json);
}
inline SimpleGraph parse_simple_graph(std::string_view text) {
  return detail::anchored(text, simple_graph_from_json);
}
inline ConstraintGraph parse_constraint_graph(std::string_view text) {
  return detail::anchored(text, constraint_graph_from_json);
}

} // namespace ngacsafe::io

#endif // NGACSAFE_IO_HPP
