#pragma once

// Flag expansion and standard persistence over Z/2 by boundary matrix
// reduction. Meant for small inputs.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "flagcollapse/core.hpp"
#include "flagcollapse/oracle/diagram.hpp"

namespace flagcollapse::oracle {

inline constexpr std::size_t kDefaultSimplexBudget = 50000;

struct Simplex {
  std::vector<VertexId> vertices;  // sorted
  Grade t = 0;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

inline bool simplex_less(const Simplex& a, const Simplex& b) {
  return std::forward_as_tuple(a.t, a.vertices.size(), a.vertices) <
         std::forward_as_tuple(b.t, b.vertices.size(), b.vertices);
}

/// Simplices sorted by (grade, dimension, vertices); faces precede cofaces.
struct SimplicialFiltration {
  std::vector<Simplex> simplices;
};

namespace detail {

class CliqueEnumerator {
 public:
  CliqueEnumerator(const std::map<VertexId, Grade>& births,
                   const std::vector<FilteredEdge>& edges, int max_dim, std::size_t budget)
      : births_(births), max_size_(static_cast<std::size_t>(max_dim) + 1), budget_(budget) {
    for (const auto& e : edges) {
      adj_[e.u][e.v] = e.t;
      adj_[e.v][e.u] = e.t;
    }
  }

  std::vector<Simplex> run() {
    for (const auto& [v, b] : births_) {
      std::vector<VertexId> cand;
      for (const auto& [w, t] : adj_[v])
        if (w > v) cand.push_back(w);
      grow({v}, b, cand);
    }
    return std::move(out_);
  }

 private:
  void grow(std::vector<VertexId> clique, Grade t, const std::vector<VertexId>& cand) {
    if (out_.size() >= budget_)
      throw std::runtime_error("flag expansion exceeds the budget of " +
                               std::to_string(budget_) +
                               " simplices; use a smaller instance or a lower dimension");
    out_.push_back({clique, t});
    if (clique.size() == max_size_) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      VertexId w = cand[i];
      Grade tw = std::max(t, births_.at(w));
      for (auto x : clique) tw = std::max(tw, adj_[x][w]);
      std::vector<VertexId> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (adj_[w].count(cand[j])) next.push_back(cand[j]);
      auto grown = clique;
      grown.push_back(w);
      grow(std::move(grown), tw, next);
    }
  }

  const std::map<VertexId, Grade>& births_;
  std::map<VertexId, std::map<VertexId, Grade>> adj_;
  std::size_t max_size_;
  std::size_t budget_;
  std::vector<Simplex> out_;
};

}  // namespace detail

/// All cliques with at most max_dim + 1 vertices. A clique's grade is the
/// largest birth or edge grade among its faces.
inline SimplicialFiltration flag_expand(const FilteredGraph& g, int max_dim,
                                        std::size_t budget = kDefaultSimplexBudget) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  auto simplices = detail::CliqueEnumerator(g.births(), g.edges(), max_dim, budget).run();
  std::sort(simplices.begin(), simplices.end(), simplex_less);
  return {std::move(simplices)};
}

/// Unreduced-pair bookkeeping of a Z/2 column reduction.
struct ReductionPairs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (birth index, death index)
  std::vector<std::size_t> essential;
};

inline ReductionPairs reduce_boundary(const SimplicialFiltration& f) {
  const auto& s = f.simplices;
  std::map<std::vector<VertexId>, std::size_t> index;
  for (std::size_t i = 0; i < s.size(); ++i) index.emplace(s[i].vertices, i);

  std::vector<std::vector<std::size_t>> columns(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].vertices.size() < 2) continue;
    for (std::size_t k = 0; k < s[i].vertices.size(); ++k) {
      auto face = s[i].vertices;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
      auto it = index.find(face);
      if (it == index.end() || it->second >= i)
        throw std::invalid_argument("filtration is not closed under faces");
      columns[i].push_back(it->second);
    }
    std::sort(columns[i].begin(), columns[i].end());
  }

  ReductionPairs out;
  std::unordered_map<std::size_t, std::size_t> owner;  // low -> column
  std::vector<char> paired(s.size(), 0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto& col = columns[j];
    while (!col.empty()) {
      auto it = owner.find(col.back());
      if (it == owner.end()) break;
      std::vector<std::size_t> sum;
      std::set_symmetric_difference(col.begin(), col.end(), columns[it->second].begin(),
                                    columns[it->second].end(), std::back_inserter(sum));
      col = std::move(sum);
    }
    if (!col.empty()) {
      owner.emplace(col.back(), j);
      out.pairs.emplace_back(col.back(), j);
      paired[col.back()] = paired[j] = 1;
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!paired[i]) out.essential.push_back(i);
  return out;
}

/// Half-open diagram in dimensions 0..max_dim. Intervals of length zero are
/// dropped. Deaths in dimension max_dim need simplices of dimension
/// max_dim + 1 in f.
inline PersistenceDiagram persistence(const SimplicialFiltration& f, int max_dim) {
  const auto& s = f.simplices;
  auto r = reduce_boundary(f);
  PersistenceDiagram d{IntervalConvention::half_open, {}};
  for (auto [b, k] : r.pairs)
    if (s[b].dim() <= max_dim && s[b].t < s[k].t) d.points.push_back({s[b].dim(), s[b].t, s[k].t});
  for (auto b : r.essential)
    if (s[b].dim() <= max_dim) d.points.push_back({s[b].dim(), s[b].t, kInfinity});
  d.normalize();
  return d;
}

/// Diagram of the flag filtration of g in dimensions 0..max_dim.
inline PersistenceDiagram flag_persistence(const FilteredGraph& g, int max_dim,
                                           std::size_t budget = kDefaultSimplexBudget) {
  return persistence(flag_expand(g, max_dim + 1, budget), max_dim);
}

/// Distinct simplex grades, increasing.
inline std::vector<Grade> filtration_grades(const FilteredGraph& g) {
  std::vector<Grade> out;
  for (const auto& [v, b] : g.births()) out.push_back(b);
  for (const auto& e : g.edges()) out.push_back(e.t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Alternating count of simplices with grade <= t.
inline long euler_characteristic(const SimplicialFiltration& f, Grade t) {
  long chi = 0;
  for (const auto& s : f.simplices)
    if (s.t <= t) chi += (s.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

/// Number of half-open intervals of dimension dim alive at t.
inline long betti_at(const PersistenceDiagram& d, int dim, Grade t) {
  long n = 0;
  for (const auto& p : d.points)
    if (p.dim == dim && p.birth <= t && t < p.death) ++n;
  return n;
}

}  // namespace flagcollapse::oracle
