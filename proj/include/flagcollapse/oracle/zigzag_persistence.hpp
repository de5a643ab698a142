#pragma once

// Zigzag persistence over Z/2 for small inputs.
//
// Every grade contributes two steps, the graph after its inclusions and the
// graph after its removals, and both carry the grade as label. Runs of equal
// complexes are merged into one node. For each pair of nodes i <= j the
// number of intervals covering [i, j] is read off the composed linear
// relation between H(K_i) and H(K_j); inclusion-exclusion then gives the
// multiplicity of every interval.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "flagcollapse/oracle/diagram.hpp"
#include "flagcollapse/oracle/gf2.hpp"
#include "flagcollapse/oracle/persistence.hpp"
#include "flagcollapse/zigzag.hpp"

namespace flagcollapse::oracle {

namespace detail {

using gf2::Vector;

struct ZigzagNode {
  std::size_t first_step, last_step;
  std::vector<std::set<std::size_t>> simplices;  // per dimension, global indices
};

/// A subspace of V_a x V_b stored as spanning vectors of length a + b.
struct Relation {
  std::size_t a = 0, b = 0;
  std::vector<Vector> vectors;

  void prune() {
    gf2::Echelon e;
    std::vector<Vector> kept;
    for (auto& v : vectors)
      if (e.add(v)) kept.push_back(std::move(v));
    vectors = std::move(kept);
  }

  Vector left(const Vector& v) const {
    Vector out(a);
    for (std::size_t k = 0; k < a; ++k) out[k] = v[k];
    return out;
  }

  Vector right(const Vector& v) const {
    Vector out(b);
    for (std::size_t k = 0; k < b; ++k) out[k] = v[a + k];
    return out;
  }

  std::size_t covering_count() const {
    std::vector<Vector> l, r;
    for (const auto& v : vectors) {
      l.push_back(left(v));
      r.push_back(right(v));
    }
    return gf2::rank(l) + gf2::rank(r) - gf2::rank(vectors);
  }
};

inline Vector concat(const Vector& x, const Vector& y) {
  Vector out(x.size() + y.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k];
  for (std::size_t k = 0; k < y.size(); ++k) out[x.size() + k] = y[k];
  return out;
}

/// Homology of one node in one dimension: representative cycles plus a way
/// to express any cycle in their coordinates.
class NodeHomology {
 public:
  NodeHomology(const std::vector<std::vector<std::size_t>>& boundary_p,
               const std::vector<std::vector<std::size_t>>& boundary_p1,
               const std::set<std::size_t>& chains, const std::set<std::size_t>& cochains,
               std::size_t n_p, std::size_t n_pm1)
      : n_p_(n_p) {
    std::vector<std::size_t> local(chains.begin(), chains.end());
    std::vector<Vector> columns;
    for (auto s : local) {
      Vector c(n_pm1);
      for (auto f : boundary_p[s]) c.flip(f);
      columns.push_back(std::move(c));
    }
    std::vector<Vector> cycles;
    for (const auto& k : gf2::kernel(columns)) {
      Vector z(n_p);
      for (auto i = k.find_first(); i != Vector::npos; i = k.find_next(i)) z.flip(local[i]);
      cycles.push_back(std::move(z));
    }
    std::vector<Vector> boundaries;
    for (auto s : cochains) {
      Vector c(n_p);
      for (auto f : boundary_p1[s]) c.flip(f);
      boundaries.push_back(std::move(c));
    }
    gf2::Echelon probe;
    for (const auto& b : boundaries) probe.add(b);
    for (const auto& z : cycles)
      if (probe.add(z)) reps_.push_back(z);
    echelon_ = gf2::Echelon(reps_.size());
    for (const auto& b : boundaries) echelon_.add(b);
    for (std::size_t i = 0; i < reps_.size(); ++i)
      echelon_.add(reps_[i], gf2::unit(reps_.size(), i));
  }

  std::size_t dimension() const { return reps_.size(); }
  const std::vector<Vector>& representatives() const { return reps_; }

  /// Coordinates of a cycle of this node's complex.
  Vector coordinates(Vector z) const {
    Vector tag(reps_.size());
    if (!echelon_.reduce(z, tag)) throw std::logic_error("chain is not a cycle of the node");
    return tag;
  }

 private:
  std::size_t n_p_;
  std::vector<Vector> reps_;
  gf2::Echelon echelon_;
};

/// Matrix of the map induced by inclusion, as images of the source basis.
inline std::vector<Vector> induced_map(const NodeHomology& from, const NodeHomology& to) {
  std::vector<Vector> out;
  for (const auto& r : from.representatives()) out.push_back(to.coordinates(r));
  return out;
}

/// R composed with the forward map f: V_b -> V_c.
inline Relation compose_forward(const Relation& r, const std::vector<Vector>& f, std::size_t c) {
  Relation out{r.a, c, {}};
  for (const auto& v : r.vectors)
    out.vectors.push_back(concat(r.left(v), gf2::combine(f, r.right(v), c)));
  out.prune();
  return out;
}

/// R composed with the backward map g: V_c -> V_b, i.e. {(x, z) : (x, g z) in R}.
inline Relation compose_backward(const Relation& r, const std::vector<Vector>& g, std::size_t c) {
  const std::size_t m = r.vectors.size();
  std::vector<Vector> columns;
  for (const auto& v : r.vectors) columns.push_back(r.right(v));
  for (const auto& gz : g) columns.push_back(gz);
  Relation out{r.a, c, {}};
  for (const auto& k : gf2::kernel(columns)) {
    Vector x(r.a), z(c);
    for (auto i = k.find_first(); i != Vector::npos; i = k.find_next(i)) {
      if (i < m)
        x ^= r.left(r.vectors[i]);
      else
        z.flip(i - m);
    }
    out.vectors.push_back(concat(x, z));
  }
  out.prune();
  return out;
}

}  // namespace detail

/// Closed-interval diagram in dimensions 0..max_dim. `grades`, if given,
/// must contain every event and birth grade; extra grades add steps where
/// nothing changes, which fixes the label of the final step when comparing
/// filtrations with different last events.
inline PersistenceDiagram zigzag_persistence(const ZigzagFiltration& z, int max_dim,
                                             std::optional<std::vector<Grade>> grades = {},
                                             std::size_t budget = kDefaultSimplexBudget) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  const std::vector<Grade> needed = z.grades();
  if (!grades) {
    grades = needed;
  } else {
    std::sort(grades->begin(), grades->end());
    grades->erase(std::unique(grades->begin(), grades->end()), grades->end());
    for (auto t : needed)
      if (!std::binary_search(grades->begin(), grades->end(), t))
        throw std::invalid_argument("grade list misses grade " + std::to_string(t));
  }
  PersistenceDiagram out{IntervalConvention::closed, {}};
  if (grades->empty()) return out;

  const int top = max_dim + 1;
  std::vector<std::map<std::vector<VertexId>, std::size_t>> index(top + 1);
  std::vector<std::vector<std::vector<std::size_t>>> boundary(top + 1);
  auto intern = [&](const std::vector<VertexId>& s) -> std::size_t {
    int d = static_cast<int>(s.size()) - 1;
    auto [it, fresh] = index[d].emplace(s, index[d].size());
    if (fresh) {
      std::vector<std::size_t> faces;
      if (d > 0) {
        for (std::size_t k = 0; k < s.size(); ++k) {
          auto f = s;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
          faces.push_back(index[d - 1].at(f));
        }
      }
      boundary[d].push_back(std::move(faces));
      std::size_t total = 0;
      for (const auto& m : index) total += m.size();
      if (total > budget)
        throw std::runtime_error("zigzag persistence exceeds the budget of " +
                                 std::to_string(budget) + " simplices; use a smaller instance");
    }
    return it->second;
  };

  const auto intervals = pair_events(z);
  std::vector<detail::ZigzagNode> nodes;
  std::vector<FilteredEdge> previous_edges;
  std::map<VertexId, Grade> previous_vertices;
  for (std::size_t step = 0; step < 2 * grades->size(); ++step) {
    const Grade t = (*grades)[step / 2];
    const bool after_removals = step % 2 == 1;
    std::map<VertexId, Grade> vertices;
    for (const auto& [v, b] : z.births())
      if (b <= t) vertices.emplace(v, b);
    std::vector<FilteredEdge> edges;
    for (const auto& i : intervals)
      if (i.in <= t && (after_removals ? t < i.out : t <= i.out)) edges.push_back({i.u, i.v, 0});
    std::sort(edges.begin(), edges.end(), filtration_less);
    if (!nodes.empty() && edges == previous_edges && vertices == previous_vertices) {
      nodes.back().last_step = step;
      continue;
    }
    detail::ZigzagNode node{step, step, std::vector<std::set<std::size_t>>(top + 1)};
    auto cliques = detail::CliqueEnumerator(vertices, edges, top, budget).run();
    std::sort(cliques.begin(), cliques.end(), simplex_less);  // faces first
    for (const auto& s : cliques) node.simplices[s.dim()].insert(intern(s.vertices));
    nodes.push_back(std::move(node));
    previous_edges = std::move(edges);
    previous_vertices = std::move(vertices);
  }

  const std::size_t n = nodes.size();
  for (int p = 0; p <= max_dim; ++p) {
    const std::size_t n_p = index[p].size();
    const std::size_t n_pm1 = p > 0 ? index[p - 1].size() : 0;
    std::vector<detail::NodeHomology> h;
    for (const auto& node : nodes)
      h.emplace_back(boundary[p], boundary[p + 1], node.simplices[p], node.simplices[p + 1], n_p,
                     n_pm1);
    // maps[k]: between node k and k+1; forward when K_k is a subcomplex of K_{k+1}.
    std::vector<std::vector<gf2::Vector>> maps;
    std::vector<char> forward;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      bool fw = std::includes(nodes[k + 1].simplices[0].begin(), nodes[k + 1].simplices[0].end(),
                              nodes[k].simplices[0].begin(), nodes[k].simplices[0].end());
      for (int d = 1; fw && d <= top; ++d)
        fw = std::includes(nodes[k + 1].simplices[d].begin(), nodes[k + 1].simplices[d].end(),
                           nodes[k].simplices[d].begin(), nodes[k].simplices[d].end());
      forward.push_back(fw);
      maps.push_back(fw ? detail::induced_map(h[k], h[k + 1]) : detail::induced_map(h[k + 1], h[k]));
    }
    // rk[i][j]: intervals covering nodes i..j; indices shifted by one so the
    // border rows and columns stay zero.
    std::vector<std::vector<long>> rk(n + 2, std::vector<long>(n + 2, 0));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = h[i].dimension();
      detail::Relation r{d, d, {}};
      for (std::size_t k = 0; k < d; ++k)
        r.vectors.push_back(detail::concat(gf2::unit(d, k), gf2::unit(d, k)));
      rk[i + 1][i + 1] = static_cast<long>(r.covering_count());
      for (std::size_t j = i; j + 1 < n; ++j) {
        const std::size_t c = h[j + 1].dimension();
        r = forward[j] ? detail::compose_forward(r, maps[j], c)
                       : detail::compose_backward(r, maps[j], c);
        rk[i + 1][j + 2] = static_cast<long>(r.covering_count());
        if (rk[i + 1][j + 2] == 0) break;
      }
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        long m = rk[i][j] - rk[i - 1][j] - rk[i][j + 1] + rk[i - 1][j + 1];
        if (m < 0) throw std::logic_error("negative interval multiplicity");
        const Grade birth = (*grades)[nodes[i - 1].first_step / 2];
        const Grade death = (*grades)[nodes[j - 1].last_step / 2];
        for (long c = 0; c < m; ++c) out.points.push_back({p, birth, death});
      }
    }
  }
  out.normalize();
  return out;
}

}  // namespace flagcollapse::oracle
