#pragma once

// Brute-force reference implementations and random instance generators.
// Everything here is deliberately naive and independent of the library
// algorithms it is used to check.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "flagcollapse/core.hpp"
#include "flagcollapse/oracle/diagram.hpp"
#include "flagcollapse/samplers.hpp"

namespace testing_support {

using namespace flagcollapse;

inline std::optional<Grade> edge_grade(const std::vector<FilteredEdge>& edges, VertexId a,
                                       VertexId b) {
  for (const auto& e : edges)
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return e.t;
  return std::nullopt;
}

inline bool adjacent_at(const std::vector<FilteredEdge>& edges, VertexId a, VertexId b, Grade t) {
  auto g = edge_grade(edges, a, b);
  return g && *g <= t;
}

inline std::set<VertexId> all_vertices(const std::vector<FilteredEdge>& edges) {
  std::set<VertexId> out;
  for (const auto& e : edges) {
    out.insert(e.u);
    out.insert(e.v);
  }
  return out;
}

/// Common neighbors of uv at grade t, by a double loop over all vertices.
inline std::set<VertexId> common_at(const std::vector<FilteredEdge>& edges, VertexId u,
                                    VertexId v, Grade t) {
  std::set<VertexId> out;
  for (auto w : all_vertices(edges))
    if (w != u && w != v && adjacent_at(edges, u, w, t) && adjacent_at(edges, v, w, t))
      out.insert(w);
  return out;
}

/// Smallest w with N_t[uv] contained in N_t[w], testing every vertex.
inline std::optional<VertexId> brute_dominator(const std::vector<FilteredEdge>& edges, VertexId u,
                                               VertexId v, Grade t) {
  auto ne = common_at(edges, u, v, t);
  ne.insert(u);
  ne.insert(v);
  for (auto w : all_vertices(edges)) {
    if (w == u || w == v) continue;
    bool ok = true;
    for (auto x : ne)
      if (x != w && !adjacent_at(edges, w, x, t)) ok = false;
    if (ok) return w;
  }
  return std::nullopt;
}

/// Random points in [0,1]^dim.
inline PointCloud random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0, 1);
  PointCloud p;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim);
    for (auto& c : x) c = u(rng);
    p.points.push_back(x);
  }
  return p;
}

/// Random graph with edge probability `density` and grades drawn from
/// `levels` integer values (levels == 0 means continuous, all distinct).
inline FilteredGraph random_graph(std::mt19937_64& rng, std::size_t n, double density,
                                  int levels) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<FilteredEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(rng) < density) {
        Grade t = levels > 0 ? static_cast<Grade>(rng() % static_cast<unsigned>(levels)) : u(rng);
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), t});
      }
  return FilteredGraph::from_edges(std::move(edges));
}

/// Every clique (as a sorted vertex set) of size <= max_size, by checking all
/// vertex subsets.
inline std::set<std::vector<VertexId>> power_set_cliques(const FilteredGraph& g,
                                                         std::size_t max_size) {
  auto vs = g.vertices();
  std::set<std::vector<VertexId>> out;
  const std::size_t n = vs.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<VertexId> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(vs[i]);
    if (s.size() > max_size) continue;
    bool clique = true;
    for (std::size_t i = 0; i < s.size() && clique; ++i)
      for (std::size_t j = i + 1; j < s.size() && clique; ++j)
        clique = edge_grade(g.edges(), s[i], s[j]).has_value();
    if (clique) out.insert(s);
  }
  return out;
}

/// Rank over Z/2 of a 0/1 matrix by plain Gaussian elimination.
inline std::size_t z2_rank(std::vector<std::vector<char>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

/// Betti numbers of the clique complex of (vertices, edges) in dimensions
/// 0..max_dim via boundary matrix ranks.
inline std::vector<std::size_t> brute_betti(const FilteredGraph& g, int max_dim) {
  auto cliques = power_set_cliques(g, static_cast<std::size_t>(max_dim) + 2);
  std::vector<std::vector<std::vector<VertexId>>> by_dim(max_dim + 2);
  for (const auto& c : cliques) by_dim[c.size() - 1].push_back(c);
  auto boundary_rank = [&](int d) -> std::size_t {  // rank of C_d -> C_{d-1}
    if (d <= 0 || d > max_dim + 1) return 0;
    const auto& rows = by_dim[d - 1];
    const auto& cols = by_dim[d];
    std::vector<std::vector<char>> m(rows.size(), std::vector<char>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t k = 0; k < cols[j].size(); ++k) {
        auto f = cols[j];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
        auto i = std::find(rows.begin(), rows.end(), f) - rows.begin();
        m[static_cast<std::size_t>(i)][j] = 1;
      }
    return z2_rank(m);
  };
  std::vector<std::size_t> out;
  for (int d = 0; d <= max_dim; ++d)
    out.push_back(by_dim[d].size() - boundary_rank(d) - boundary_rank(d + 1));
  return out;
}

/// Exhaustive bottleneck distance: every injection of the smaller side into
/// the larger, with leftovers sent to the diagonal.
inline Grade brute_bottleneck(std::vector<oracle::DiagramPoint> a,
                              std::vector<oracle::DiagramPoint> b) {
  auto diag = [](const oracle::DiagramPoint& p) { return (p.death - p.birth) / 2; };
  auto cost = [](const oracle::DiagramPoint& p, const oracle::DiagramPoint& q) {
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
  };
  // Pad both sides to a + b slots; slot >= size means "diagonal".
  const std::size_t n = a.size() + b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Grade best = kInfinity;
  do {
    Grade worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = perm[i];
      bool ra = i < a.size(), rb = j < b.size();
      if (ra && rb)
        worst = std::max(worst, cost(a[i], b[j]));
      else if (ra)
        worst = std::max(worst, diag(a[i]));
      else if (rb)
        worst = std::max(worst, diag(b[j]));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace testing_support
