#ifndef NGACSAFE_DACC_HPP
#define NGACSAFE_DACC_HPP

// Directed acyclic constrained connectivity: is there a source-target path
// in some subgraph of a DAG whose edges are independent in a constraint
// graph on those edges?

#include <ngacsafe/graph.hpp>
#include <ngacsafe/mis.hpp>

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ngacsafe {

class DaccInstance {
public:
  DaccInstance(Dag dag, ConstraintGraph constraints, Index source, Index target)
      : dag_(std::move(dag)), constraints_(std::move(constraints)),
        source_(source), target_(target) {
    if (constraints_.size() != dag_.edge_count())
      throw InvalidArgument("constraint graph must have one vertex per edge");
    if (source_ >= dag_.vertex_count() || target_ >= dag_.vertex_count())
      throw InvalidArgument("source/target out of range");
    if (source_ == target_)
      throw InvalidArgument("source and target must differ");
  }

  const Dag &dag() const { return dag_; }
  const ConstraintGraph &constraints() const { return constraints_; }
  Index source() const { return source_; }
  Index target() const { return target_; }

  friend bool operator==(const DaccInstance &, const DaccInstance &) = default;

private:
  Dag dag_;
  ConstraintGraph constraints_;
  Index source_;
  Index target_;
};

struct DaccVerdict {
  bool reachable = false;
  std::optional<std::vector<Index>> path;     // vertex sequence
  std::optional<std::vector<Index>> edge_set; // the MIS that admitted it
  std::size_t mis_enumerated = 0;
};

struct DaccOptions {
  /// Stop with ResourceExhausted after this many MIS; 0 means no limit.
  std::size_t max_mis = 0;
};

/// True iff no conflict has both endpoints in `edges`.
inline bool is_valid_subgraph(const DaccInstance &inst,
                              const std::vector<Index> &edges) {
  std::vector<char> in(inst.dag().edge_count(), 0);
  for (Index e : edges) {
    if (e >= in.size())
      throw InvalidArgument("unknown edge index " + std::to_string(e));
    in[e] = 1;
  }
  for (auto [a, b] : inst.constraints().conflicts())
    if (in[a] && in[b])
      return false;
  return true;
}

/// Breadth-first search using only edges whose mask entry is set.
inline std::optional<std::vector<Index>>
st_path(const Dag &dag, Index source, Index target,
        const std::vector<char> &allowed) {
  if (allowed.size() != dag.edge_count())
    throw InvalidArgument("edge mask size mismatch");
  const std::size_t none = dag.vertex_count();
  std::vector<Index> parent(dag.vertex_count(), none);
  parent.at(source) = source;
  std::deque<Index> queue{source};
  while (!queue.empty() && parent.at(target) == none) {
    Index v = queue.front();
    queue.pop_front();
    for (Index e : dag.out_edges(v)) {
      if (!allowed[e])
        continue;
      Index w = dag.edge(e).second;
      if (parent[w] == none) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent.at(target) == none)
    return std::nullopt;
  std::vector<Index> path{target};
  for (Index v = target; v != source; v = parent[v])
    path.push_back(parent[v]);
  return std::vector<Index>(path.rbegin(), path.rend());
}

inline std::optional<std::vector<Index>>
st_path(const Dag &dag, Index source, Index target,
        const std::vector<Index> &allowed_edges) {
  std::vector<char> mask(dag.edge_count(), 0);
  for (Index e : allowed_edges)
    mask.at(e) = 1;
  return st_path(dag, source, target, mask);
}

/// Edge indices traversed by a vertex path.
inline std::vector<Index> path_edges(const Dag &dag,
                                     const std::vector<Index> &path) {
  std::vector<Index> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto e = dag.edge_index(path[i], path[i + 1]);
    if (!e)
      throw InvalidArgument("not a path of the graph");
    out.push_back(*e);
  }
  return out;
}

/// Loops over the maximal independent sets of the constraint graph and
/// searches each induced subgraph for a source-target path. Returns at the
/// first hit. Maximal sets suffice because adding edges never removes a
/// path.
inline DaccVerdict solve_dacc(const DaccInstance &inst,
                              const DaccOptions &opts = {}) {
  DaccVerdict verdict;
  std::vector<char> mask(inst.dag().edge_count(), 0);
  bool exhausted = false;
  std::size_t seen = 0;
  verdict.mis_enumerated =
      for_each_mis(inst.constraints(), [&](const std::vector<Index> &mis) {
        if (opts.max_mis != 0 && seen++ == opts.max_mis) {
          exhausted = true;
          return false;
        }
        std::fill(mask.begin(), mask.end(), 0);
        for (Index e : mis)
          mask[e] = 1;
        if (auto p = st_path(inst.dag(), inst.source(), inst.target(), mask)) {
          verdict.reachable = true;
          verdict.path = std::move(p);
          verdict.edge_set = mis;
          return false;
        }
        return true;
      });
  if (exhausted)
    throw ResourceExhausted("MIS limit of " + std::to_string(opts.max_mis) +
                            " reached");
  return verdict;
}

} // namespace ngacsafe

#endif // NGACSAFE_DACC_HPP
