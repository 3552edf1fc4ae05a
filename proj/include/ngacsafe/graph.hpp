#ifndef NGACSAFE_GRAPH_HPP
#define NGACSAFE_GRAPH_HPP

// Plain graph containers shared by the DACC solver, the reductions and the
// oracles. Vertices and edges are dense indices.

#include <ngacsafe/model.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ngacsafe {

using Index = std::size_t;
using IndexPair = std::pair<Index, Index>;

namespace detail {

inline std::map<std::string, Index>
index_names(const std::vector<std::string> &names) {
  std::map<std::string, Index> idx;
  for (Index i = 0; i < names.size(); ++i) {
    if (names[i].empty())
      throw InvalidArgument("empty vertex name");
    if (!idx.emplace(names[i], i).second)
      throw InvalidArgument("duplicate vertex name '" + names[i] + "'");
  }
  return idx;
}

} // namespace detail

/// Directed acyclic graph with named vertices. Edge order is preserved and
/// defines edge indices.
class Dag {
public:
  Dag() = default;

  Dag(std::vector<std::string> names, std::vector<IndexPair> edges)
      : names_(std::move(names)), edges_(std::move(edges)),
        index_(detail::index_names(names_)), out_(names_.size()) {
    for (Index e = 0; e < edges_.size(); ++e) {
      auto [a, b] = edges_[e];
      if (a >= names_.size() || b >= names_.size())
        throw InvalidArgument("edge endpoint out of range");
      if (a == b)
        throw InvalidArgument("self-loop on '" + names_[a] + "'");
      out_[a].push_back(e);
    }
    std::vector<IndexPair> seen = edges_;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw InvalidArgument("duplicate edge");
    if (!topological_order())
      throw InvalidArgument("graph is not acyclic");
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(Index v) const { return names_.at(v); }
  const std::vector<IndexPair> &edges() const { return edges_; }
  const IndexPair &edge(Index e) const { return edges_.at(e); }
  /// Outgoing edge indices of `v`.
  const std::vector<Index> &out_edges(Index v) const { return out_.at(v); }

  std::optional<Index> index_of(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<Index> edge_index(Index a, Index b) const {
    for (Index e : out_.at(a))
      if (edges_[e].second == b)
        return e;
    return std::nullopt;
  }

  /// Kahn order, or nothing if a cycle exists.
  std::optional<std::vector<Index>> topological_order() const {
    std::vector<std::size_t> indeg(names_.size(), 0);
    for (auto [a, b] : edges_)
      ++indeg[b];
    std::deque<Index> ready;
    for (Index v = 0; v < names_.size(); ++v)
      if (indeg[v] == 0)
        ready.push_back(v);
    std::vector<Index> order;
    while (!ready.empty()) {
      Index v = ready.front();
      ready.pop_front();
      order.push_back(v);
      for (Index e : out_[v])
        if (--indeg[edges_[e].second] == 0)
          ready.push_back(edges_[e].second);
    }
    if (order.size() != names_.size())
      return std::nullopt;
    return order;
  }

  friend bool operator==(const Dag &a, const Dag &b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

private:
  std::vector<std::string> names_;
  std::vector<IndexPair> edges_;
  std::map<std::string, Index> index_;
  std::vector<std::vector<Index>> out_;
};

/// Undirected conflict graph on `size()` vertices. Conflicts are stored
/// normalized (smaller index first), sorted and deduplicated.
class ConstraintGraph {
public:
  ConstraintGraph() = default;

  explicit ConstraintGraph(std::size_t n, std::vector<IndexPair> conflicts = {})
      : n_(n), adj_(n) {
    for (auto &[a, b] : conflicts) {
      if (a >= n || b >= n)
        throw InvalidArgument("conflict endpoint out of range");
      if (a == b)
        throw InvalidArgument("conflict is a self-loop");
      if (a > b)
        std::swap(a, b);
    }
    std::sort(conflicts.begin(), conflicts.end());
    conflicts.erase(std::unique(conflicts.begin(), conflicts.end()),
                    conflicts.end());
    conflicts_ = std::move(conflicts);
    for (auto [a, b] : conflicts_) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto &row : adj_)
      std::sort(row.begin(), row.end());
  }

  std::size_t size() const { return n_; }
  const std::vector<IndexPair> &conflicts() const { return conflicts_; }
  const std::vector<Index> &neighbors(Index v) const { return adj_.at(v); }

  bool adjacent(Index a, Index b) const {
    const auto &row = adj_.at(a);
    return std::binary_search(row.begin(), row.end(), b);
  }

  /// Induced subgraph on `keep` (in the given order); vertex i of the
  /// result is keep[i].
  ConstraintGraph induced(const std::vector<Index> &keep) const {
    std::vector<std::optional<Index>> pos(n_);
    for (Index i = 0; i < keep.size(); ++i)
      pos.at(keep[i]) = i;
    std::vector<IndexPair> cs;
    for (auto [a, b] : conflicts_)
      if (pos[a] && pos[b])
        cs.emplace_back(*pos[a], *pos[b]);
    return ConstraintGraph(keep.size(), std::move(cs));
  }

  friend bool operator==(const ConstraintGraph &a, const ConstraintGraph &b) {
    return a.n_ == b.n_ && a.conflicts_ == b.conflicts_;
  }

private:
  std::size_t n_ = 0;
  std::vector<IndexPair> conflicts_;
  std::vector<std::vector<Index>> adj_;
};

/// Undirected simple graph with named vertices (input of 3-colouring).
struct SimpleGraph {
  std::vector<std::string> vertices;
  std::vector<IndexPair> edges;

  /// Rejects self-loops and out-of-range endpoints; duplicates are merged.
  static SimpleGraph make(std::vector<std::string> vertices,
                          std::vector<IndexPair> edges) {
    detail::index_names(vertices);
    for (auto &[a, b] : edges) {
      if (a >= vertices.size() || b >= vertices.size())
        throw InvalidArgument("edge endpoint out of range");
      if (a == b)
        throw InvalidArgument("self-loop on '" + vertices[a] + "'");
      if (a > b)
        std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {std::move(vertices), std::move(edges)};
  }

  friend bool operator==(const SimpleGraph &, const SimpleGraph &) = default;
};

} // namespace ngacsafe

#endif // NGACSAFE_GRAPH_HPP
