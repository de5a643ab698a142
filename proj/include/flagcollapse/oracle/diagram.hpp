#pragma once

// Persistence diagrams, exact comparison and bottleneck distance.

#include <algorithm>
#include <cmath>
#include <compare>
#include <functional>
#include <stdexcept>
#include <vector>

#include "flagcollapse/core.hpp"

namespace flagcollapse::oracle {

/// half_open: [birth, death) as produced by standard persistence.
/// closed: [birth, death] as produced by zigzag persistence.
enum class IntervalConvention { half_open, closed };

struct DiagramPoint {
  int dim = 0;
  Grade birth = 0;
  Grade death = kInfinity;

  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

struct PersistenceDiagram {
  IntervalConvention convention = IntervalConvention::half_open;
  std::vector<DiagramPoint> points;

  void normalize() { std::sort(points.begin(), points.end()); }

  std::vector<DiagramPoint> in_dimension(int dim) const {
    std::vector<DiagramPoint> out;
    for (const auto& p : points)
      if (p.dim == dim) out.push_back(p);
    return out;
  }

  int max_dimension() const {
    int d = -1;
    for (const auto& p : points) d = std::max(d, p.dim);
    return d;
  }
};

/// Exact multiset equality. Throws if the conventions differ.
inline bool diagrams_equal(PersistenceDiagram a, PersistenceDiagram b) {
  if (a.convention != b.convention)
    throw std::invalid_argument("comparing diagrams with different interval conventions");
  a.normalize();
  b.normalize();
  return a.points == b.points;
}

/// Half-open [a, b) over the grade list becomes closed [a, last grade before b];
/// [a, inf) becomes [a, grades.back()].
inline PersistenceDiagram to_closed(const PersistenceDiagram& d, const std::vector<Grade>& grades) {
  if (d.convention != IntervalConvention::half_open)
    throw std::invalid_argument("diagram is not half-open");
  PersistenceDiagram out{IntervalConvention::closed, {}};
  for (auto p : d.points) {
    if (p.death == kInfinity) {
      p.death = grades.back();
    } else {
      auto it = std::lower_bound(grades.begin(), grades.end(), p.death);
      if (it == grades.begin() || it == grades.end() || *it != p.death)
        throw std::invalid_argument("death grade not in the grade list");
      p.death = *(it - 1);
    }
    out.points.push_back(p);
  }
  out.normalize();
  return out;
}

/// Inverse of to_closed.
inline PersistenceDiagram to_half_open(const PersistenceDiagram& d,
                                       const std::vector<Grade>& grades) {
  if (d.convention != IntervalConvention::closed)
    throw std::invalid_argument("diagram is not closed");
  PersistenceDiagram out{IntervalConvention::half_open, {}};
  for (auto p : d.points) {
    auto it = std::lower_bound(grades.begin(), grades.end(), p.death);
    if (it == grades.end() || *it != p.death)
      throw std::invalid_argument("death grade not in the grade list");
    p.death = (it + 1 == grades.end()) ? kInfinity : *(it + 1);
    out.points.push_back(p);
  }
  out.normalize();
  return out;
}

namespace detail {

inline bool has_perfect_matching(const std::vector<std::vector<std::size_t>>& adj,
                                 std::size_t right_size) {
  std::vector<std::size_t> match(right_size, SIZE_MAX);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t l) {
    for (auto r : adj[l]) {
      if (seen[r]) continue;
      seen[r] = 1;
      if (match[r] == SIZE_MAX || augment(match[r])) {
        match[r] = l;
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < adj.size(); ++l) {
    seen.assign(right_size, 0);
    if (!augment(l)) return false;
  }
  return true;
}

inline Grade linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

inline Grade to_diagonal(const DiagramPoint& a) { return (a.death - a.birth) / 2; }

}  // namespace detail

/// Bottleneck distance between the dimension-`dim` parts. Points may be
/// matched to the diagonal; points with infinite death only match each
/// other, and unequal counts of them give an infinite distance.
inline Grade bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                 int dim) {
  std::vector<DiagramPoint> fa, fb;
  std::vector<Grade> ia, ib;
  for (const auto& p : a.in_dimension(dim))
    (p.death == kInfinity ? ia.push_back(p.birth) : fa.push_back(p));
  for (const auto& p : b.in_dimension(dim))
    (p.death == kInfinity ? ib.push_back(p.birth) : fb.push_back(p));
  if (ia.size() != ib.size()) return kInfinity;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  Grade essential = 0;
  for (std::size_t i = 0; i < ia.size(); ++i) essential = std::max(essential, std::abs(ia[i] - ib[i]));

  const std::size_t n = fa.size(), m = fb.size();
  std::vector<Grade> radii{0};
  for (const auto& p : fa) radii.push_back(detail::to_diagonal(p));
  for (const auto& q : fb) radii.push_back(detail::to_diagonal(q));
  for (const auto& p : fa)
    for (const auto& q : fb) radii.push_back(detail::linf(p, q));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  // Left: points of a, then diagonal copies of b. Right: points of b, then
  // diagonal copies of a.
  auto feasible = [&](Grade r) {
    std::vector<std::vector<std::size_t>> adj(n + m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (detail::linf(fa[i], fb[j]) <= r) adj[i].push_back(j);
      if (detail::to_diagonal(fa[i]) <= r) adj[i].push_back(m + i);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (detail::to_diagonal(fb[j]) <= r) adj[n + j].push_back(j);
      for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
    }
    return detail::has_perfect_matching(adj, n + m);
  };
  std::size_t lo = 0, hi = radii.size() - 1;  // the largest radius is always feasible
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(radii[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(essential, radii[lo]);
}

}  // namespace flagcollapse::oracle
