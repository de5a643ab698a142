#pragma once

// Filtered graphs, the neighborhood map and the edge domination predicate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace flagcollapse {

using VertexId = std::uint32_t;
using Grade = double;

inline constexpr Grade kInfinity = std::numeric_limits<Grade>::infinity();

struct FilteredEdge {
  VertexId u = 0;
  VertexId v = 0;
  Grade t = 0;

  friend bool operator==(const FilteredEdge&, const FilteredEdge&) = default;
};

/// Filtration order: (t, u, v).
inline bool filtration_less(const FilteredEdge& a, const FilteredEdge& b) {
  return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
}

inline FilteredEdge canonical(FilteredEdge e) {
  if (e.u > e.v) std::swap(e.u, e.v);
  return e;
}

inline std::string describe_edge(VertexId u, VertexId v) {
  std::ostringstream os;
  os << "(" << u << ", " << v << ")";
  return os.str();
}

/// The 1-skeleton of a flag filtration: vertex birth grades plus graded
/// edges sorted by (t, u, v). Every vertex touched by an edge has a birth.
class FilteredGraph {
 public:
  FilteredGraph() = default;

  /// Canonicalizes orientation, sorts and validates. Vertices without an
  /// explicit birth are born with their earliest incident edge.
  /// Throws std::invalid_argument on loops, NaN grades, duplicate edges or
  /// a birth later than an incident edge.
  static FilteredGraph from_edges(std::vector<FilteredEdge> edges,
                                  std::map<VertexId, Grade> births = {}) {
    FilteredGraph g;
    for (auto& e : edges) {
      if (e.u == e.v)
        throw std::invalid_argument("self loop on vertex " + std::to_string(e.u));
      if (std::isnan(e.t))
        throw std::invalid_argument("NaN grade on edge " + describe_edge(e.u, e.v));
      e = canonical(e);
    }
    for (const auto& [v, b] : births)
      if (std::isnan(b))
        throw std::invalid_argument("NaN birth on vertex " + std::to_string(v));
    std::sort(edges.begin(), edges.end(), filtration_less);
    {
      std::vector<std::pair<VertexId, VertexId>> pairs;
      pairs.reserve(edges.size());
      for (const auto& e : edges) pairs.emplace_back(e.u, e.v);
      std::sort(pairs.begin(), pairs.end());
      auto dup = std::adjacent_find(pairs.begin(), pairs.end());
      if (dup != pairs.end())
        throw std::invalid_argument("duplicate edge " + describe_edge(dup->first, dup->second));
    }
    for (const auto& e : edges) {
      for (VertexId x : {e.u, e.v}) {
        auto it = births.find(x);
        if (it == births.end())
          births.emplace(x, e.t);  // edges are sorted, so the first hit is the earliest
        else if (it->second > e.t)
          throw std::invalid_argument("vertex " + std::to_string(x) + " born at " +
                                      std::to_string(it->second) + " after incident edge " +
                                      describe_edge(e.u, e.v));
      }
    }
    g.edges_ = std::move(edges);
    g.births_ = std::move(births);
    return g;
  }

  const std::vector<FilteredEdge>& edges() const { return edges_; }
  const std::map<VertexId, Grade>& births() const { return births_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_count() const { return births_.size(); }

  Grade birth(VertexId v) const {
    auto it = births_.find(v);
    if (it == births_.end())
      throw std::out_of_range("unknown vertex " + std::to_string(v));
    return it->second;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(births_.size());
    for (const auto& kv : births_) out.push_back(kv.first);
    return out;
  }

  bool distinct_grades() const {
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i - 1].t == edges_[i].t) return false;
    return true;
  }

  friend bool operator==(const FilteredGraph&, const FilteredGraph&) = default;

 private:
  std::vector<FilteredEdge> edges_;
  std::map<VertexId, Grade> births_;
};

/// How domination checks test set inclusion. `dense` marks the edge
/// neighborhood in a vertex-indexed array; `sparse` merges sorted rows.
enum class NeighborhoodLayout { dense, sparse };

/// Symmetric map vertex -> (neighbor -> current grade of the connecting
/// edge). Vertices are stored by dense index in VertexId order, so index
/// order and id order agree.
class NeighborhoodMap {
 public:
  using Index = std::uint32_t;

  struct Entry {
    Index neighbor;
    Grade t;
  };

  NeighborhoodMap() = default;

  explicit NeighborhoodMap(std::span<const FilteredEdge> edges,
                           NeighborhoodLayout layout = NeighborhoodLayout::dense)
      : layout_(layout) {
    for (const auto& e : edges) {
      ids_.push_back(e.u);
      ids_.push_back(e.v);
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    rows_.resize(ids_.size());
    for (const auto& raw : edges) {
      auto e = canonical(raw);
      if (e.u == e.v)
        throw std::invalid_argument("self loop on vertex " + std::to_string(e.u));
      Index a = *index_of(e.u), b = *index_of(e.v);
      rows_[a].push_back({b, e.t});
      rows_[b].push_back({a, e.t});
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto& row = rows_[i];
      std::sort(row.begin(), row.end(),
                [](const Entry& x, const Entry& y) { return x.neighbor < y.neighbor; });
      auto dup = std::adjacent_find(row.begin(), row.end(), [](const Entry& x, const Entry& y) {
        return x.neighbor == y.neighbor;
      });
      if (dup != row.end())
        throw std::invalid_argument("duplicate edge " +
                                    describe_edge(ids_[i], ids_[dup->neighbor]));
    }
  }

  explicit NeighborhoodMap(const FilteredGraph& g,
                           NeighborhoodLayout layout = NeighborhoodLayout::dense)
      : NeighborhoodMap(std::span<const FilteredEdge>(g.edges()), layout) {}

  NeighborhoodLayout layout() const { return layout_; }
  std::size_t vertex_count() const { return ids_.size(); }
  VertexId id(Index i) const { return ids_[i]; }

  std::optional<Index> index_of(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<Index>(it - ids_.begin());
  }

  std::span<const Entry> row(Index i) const { return rows_[i]; }

  std::optional<Grade> grade_at(Index a, Index b) const {
    const auto& r = rows_[a];
    auto it = find_in(r, b);
    if (it == r.end()) return std::nullopt;
    return it->t;
  }

  std::optional<Grade> grade(VertexId u, VertexId v) const {
    auto a = index_of(u), b = index_of(v);
    if (!a || !b) return std::nullopt;
    return grade_at(*a, *b);
  }

  void set_grade_at(Index a, Index b, Grade t) {
    mutable_find(a, b)->t = t;
    mutable_find(b, a)->t = t;
  }

  void erase_at(Index a, Index b) {
    rows_[a].erase(mutable_find(a, b));
    rows_[b].erase(mutable_find(b, a));
  }

  /// Edges currently stored, canonical and sorted by (t, u, v).
  std::vector<FilteredEdge> edges() const {
    std::vector<FilteredEdge> out;
    for (Index a = 0; a < rows_.size(); ++a)
      for (const auto& en : rows_[a])
        if (a < en.neighbor) out.push_back({ids_[a], ids_[en.neighbor], en.t});
    std::sort(out.begin(), out.end(), filtration_less);
    return out;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n / 2;
  }

  bool symmetric() const {
    for (Index a = 0; a < rows_.size(); ++a)
      for (const auto& en : rows_[a]) {
        auto back = grade_at(en.neighbor, a);
        if (!back || *back != en.t) return false;
      }
    return true;
  }

 private:
  static std::vector<Entry>::const_iterator find_in(const std::vector<Entry>& r, Index b) {
    auto it = std::lower_bound(r.begin(), r.end(), b,
                               [](const Entry& x, Index key) { return x.neighbor < key; });
    if (it != r.end() && it->neighbor == b) return it;
    return r.end();
  }

  std::vector<Entry>::iterator mutable_find(Index a, Index b) {
    auto& r = rows_[a];
    auto it = std::lower_bound(r.begin(), r.end(), b,
                               [](const Entry& x, Index key) { return x.neighbor < key; });
    if (it == r.end() || it->neighbor != b)
      throw std::invalid_argument("edge " + describe_edge(ids_[a], ids_[b]) +
                                  " absent from neighborhood map");
    return it;
  }

  NeighborhoodLayout layout_ = NeighborhoodLayout::dense;
  std::vector<VertexId> ids_;
  std::vector<std::vector<Entry>> rows_;
};

inline NeighborhoodMap build_neighborhood_map(const FilteredGraph& g,
                                              NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  return NeighborhoodMap(g, layout);
}

/// Common neighbors of an edge split at a grade: `present` (both connecting
/// edges at grade <= t, ascending index) and `future` (the rest, ascending by
/// the grade at which they join, ties by index).
struct IndexedNeighborhood {
  struct Arrival {
    NeighborhoodMap::Index vertex;
    Grade t;
  };
  std::vector<NeighborhoodMap::Index> present;
  std::vector<Arrival> future;
};

struct EdgeNeighborhood {
  std::vector<VertexId> present;
  std::vector<std::pair<VertexId, Grade>> future;
};

namespace detail {

inline void split_neighborhood(const NeighborhoodMap& n, NeighborhoodMap::Index a,
                               NeighborhoodMap::Index b, Grade t, IndexedNeighborhood& out) {
  out.present.clear();
  out.future.clear();
  auto ra = n.row(a), rb = n.row(b);
  auto i = ra.begin(), j = rb.begin();
  while (i != ra.end() && j != rb.end()) {
    if (i->neighbor < j->neighbor) {
      ++i;
    } else if (j->neighbor < i->neighbor) {
      ++j;
    } else {
      Grade joins = std::max(i->t, j->t);
      if (joins <= t)
        out.present.push_back(i->neighbor);
      else
        out.future.push_back({i->neighbor, joins});
      ++i;
      ++j;
    }
  }
  std::sort(out.future.begin(), out.future.end(), [](const auto& x, const auto& y) {
    return std::tie(x.t, x.vertex) < std::tie(y.t, y.vertex);
  });
}

/// Reusable scratch for domination tests (the dense marker array).
class DominationScratch {
 public:
  void prepare(std::size_t vertex_count) {
    if (stamp_.size() < vertex_count) stamp_.resize(vertex_count, 0);
  }

  /// Does `w` (a member of `present`) satisfy present \ {w} ⊆ N_t(w)?
  bool dominates(const NeighborhoodMap& n, std::span<const NeighborhoodMap::Index> present,
                 NeighborhoodMap::Index w, Grade t, bool marked) const {
    auto row = n.row(w);
    const std::size_t need = present.size() - 1;
    if (row.size() < need) return false;
    if (marked) {
      std::size_t hits = 0, remaining = row.size();
      for (const auto& en : row) {
        if (hits + remaining < need) return false;
        --remaining;
        if (en.t <= t && stamp_[en.neighbor] == current_ && ++hits == need) return true;
      }
      return hits == need;
    }
    auto it = row.begin();
    for (auto x : present) {
      if (x == w) continue;
      it = std::lower_bound(it, row.end(), x,
                            [](const NeighborhoodMap::Entry& en, NeighborhoodMap::Index key) {
                              return en.neighbor < key;
                            });
      if (it == row.end() || it->neighbor != x || it->t > t) return false;
    }
    return true;
  }

  void mark(std::span<const NeighborhoodMap::Index> present) {
    if (++current_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      current_ = 1;
    }
    for (auto x : present) stamp_[x] = current_;
  }

  /// Smallest dominating member of `present`, if any.
  std::optional<NeighborhoodMap::Index> find_dominator(
      const NeighborhoodMap& n, std::span<const NeighborhoodMap::Index> present, Grade t) {
    if (present.empty()) return std::nullopt;
    const bool dense = n.layout() == NeighborhoodLayout::dense;
    if (dense) {
      prepare(n.vertex_count());
      mark(present);
    }
    for (auto w : present)
      if (dominates(n, present, w, t, dense)) return w;
    return std::nullopt;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
};

inline std::pair<NeighborhoodMap::Index, NeighborhoodMap::Index> locate(const NeighborhoodMap& n,
                                                                        const FilteredEdge& e) {
  auto a = n.index_of(e.u), b = n.index_of(e.v);
  if (!a || !b || !n.grade_at(*a, *b))
    throw std::invalid_argument("edge " + describe_edge(e.u, e.v) +
                                " absent from neighborhood map");
  return {*a, *b};
}

}  // namespace detail

inline EdgeNeighborhood edge_neighborhood(const NeighborhoodMap& n, const FilteredEdge& e,
                                          Grade t) {
  auto [a, b] = detail::locate(n, e);
  IndexedNeighborhood nb;
  detail::split_neighborhood(n, a, b, t, nb);
  EdgeNeighborhood out;
  for (auto x : nb.present) out.present.push_back(n.id(x));
  for (const auto& f : nb.future) out.future.emplace_back(n.id(f.vertex), f.t);
  return out;
}

/// The smallest vertex w with N_t(e) ⊆ N_t[w], or nothing. An edge whose
/// endpoints have no common neighbor at t is never dominated.
inline std::optional<VertexId> is_dominated(const NeighborhoodMap& n, const FilteredEdge& e,
                                            Grade t) {
  auto [a, b] = detail::locate(n, e);
  IndexedNeighborhood nb;
  detail::split_neighborhood(n, a, b, t, nb);
  detail::DominationScratch scratch;
  auto w = scratch.find_dominator(n, nb.present, t);
  if (!w) return std::nullopt;
  return n.id(*w);
}

}  // namespace flagcollapse
