#ifndef NGACSAFE_MIS_HPP
#define NGACSAFE_MIS_HPP

// Enumeration of all maximal independent sets with polynomial delay.
//
// Vertices are added one at a time in index order. Every MIS S of the
// graph induced by the first i vertices has at least one child among the
// MIS of the graph on the first i+1 vertices (v = vertex i):
//   - S + v, when v has no neighbour in S;
//   - otherwise S itself, and (S - N(v)) + v when that set is maximal on
//     the first i+1 vertices and S is the greedy (smallest-index-first)
//     completion of S - N(v).
// The second rule gives each MIS a unique parent, so a depth-first walk of
// this tree reaches every MIS exactly once at depth n and never dead-ends.
// Delay between outputs is O(n (n + m)); memory is O(n^2).

#include <ngacsafe/graph.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace ngacsafe {

namespace detail {

template <typename Visitor> class MisWalk {
public:
  MisWalk(const ConstraintGraph &g, Visitor &visit) : g_(g), visit_(visit) {}

  std::size_t run() {
    std::vector<char> members(g_.size(), 0);
    descend(0, members);
    return emitted_;
  }

private:
  bool has_neighbor_below(Index w, Index limit,
                          const std::vector<char> &in) const {
    for (Index x : g_.neighbors(w)) {
      if (x >= limit)
        break;
      if (in[x])
        return true;
    }
    return false;
  }

  // Returns false once the visitor asked to stop.
  bool descend(Index depth, std::vector<char> &members) {
    if (depth == g_.size()) {
      std::vector<Index> set;
      for (Index v = 0; v < members.size(); ++v)
        if (members[v])
          set.push_back(v);
      ++emitted_;
      return visit_(static_cast<const std::vector<Index> &>(set));
    }
    const Index v = depth;
    if (!has_neighbor_below(v, v, members)) {
      members[v] = 1;
      bool go = descend(depth + 1, members);
      members[v] = 0;
      return go;
    }

    // S stays maximal once v joins the prefix.
    {
      std::vector<char> keep = members;
      if (!descend(depth + 1, keep))
        return false;
    }

    std::vector<char> swapped = members;
    for (Index x : g_.neighbors(v))
      if (x < v)
        swapped[x] = 0;
    if (!is_greedy_completion(swapped, members, v))
      return true;
    swapped[v] = 1;
    for (Index w = 0; w <= v; ++w)
      if (!swapped[w] && !has_neighbor_below(w, v + 1, swapped))
        return true;
    return descend(depth + 1, swapped);
  }

  // Whether greedily completing `base` over vertices [0, limit) yields
  // exactly `target`.
  bool is_greedy_completion(const std::vector<char> &base,
                            const std::vector<char> &target,
                            Index limit) const {
    std::vector<char> cur = base;
    for (Index w = 0; w < limit; ++w) {
      if (!cur[w] && !has_neighbor_below(w, limit, cur))
        cur[w] = 1;
      if (cur[w] != target[w])
        return false;
    }
    return true;
  }

  const ConstraintGraph &g_;
  Visitor &visit_;
  std::size_t emitted_ = 0;
};

} // namespace detail

/// Calls `visit(const std::vector<Index>&)` once per maximal independent
/// set (sorted member list). Stops early when `visit` returns false.
/// Returns the number of sets produced. The order is deterministic for a
/// given vertex numbering.
template <typename Visitor>
std::size_t for_each_mis(const ConstraintGraph &g, Visitor &&visit) {
  detail::MisWalk<std::remove_reference_t<Visitor>> walk(g, visit);
  return walk.run();
}

inline std::vector<std::vector<Index>> enumerate_mis(const ConstraintGraph &g) {
  std::vector<std::vector<Index>> out;
  for_each_mis(g, [&](const std::vector<Index> &s) {
    out.push_back(s);
    return true;
  });
  return out;
}

} // namespace ngacsafe

#endif // NGACSAFE_MIS_HPP
