#pragma once

// Sequential edge-collapse drivers for flag filtrations.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "flagcollapse/core.hpp"

namespace flagcollapse {

struct CollapseStats {
  std::uint64_t domination_checks = 0;  // full scans over the edge neighborhood
  std::uint64_t witness_rechecks = 0;   // cheap re-validations of a previous dominator
  std::uint64_t shifts = 0;
  std::uint64_t trims = 0;

  CollapseStats& operator+=(const CollapseStats& o) {
    domination_checks += o.domination_checks;
    witness_rechecks += o.witness_rechecks;
    shifts += o.shifts;
    trims += o.trims;
    return *this;
  }
};

struct CollapseResult {
  std::vector<FilteredEdge> kept;     // new grades, sorted by (t, u, v)
  std::vector<FilteredEdge> removed;  // original grades, sorted by (t, u, v)
  std::map<VertexId, Grade> births;
  CollapseStats stats;

  FilteredGraph graph() const { return FilteredGraph::from_edges(kept, births); }
};

enum class Algorithm { backward, forward };

namespace detail {

/// Shifts one edge through the current neighborhood map, as far right as
/// domination allows. Shared by the exact, approximate and parallel drivers.
class EdgeShifter {
 public:
  using Index = NeighborhoodMap::Index;

  EdgeShifter(NeighborhoodMap& map, CollapseStats& stats) : map_(map), stats_(stats) {}

  /// Processes edge (a, b). The first domination test happens at
  /// `check_from` (>= its current grade `original`). If the edge is not
  /// dominated there and check_from > original, it keeps `original`.
  /// Returns the final grade, or kInfinity if the edge ran out of future
  /// neighbors while dominated (the edge is then erased from the map).
  Grade process(Index a, Index b, Grade original, Grade check_from) {
    Grade t = check_from;
    split_neighborhood(map_, a, b, t, nb_);
    std::size_t next = 0;
    std::optional<Index> witness;
    std::vector<Index> added;
    bool first = true;
    for (;;) {
      bool dominated = false;
      if (witness && still_dominates(*witness, t, added)) {
        ++stats_.witness_rechecks;
        dominated = true;
      } else {
        ++stats_.domination_checks;
        witness = scratch_.find_dominator(map_, nb_.present, t);
        dominated = witness.has_value();
      }
      if (!dominated) {
        Grade final_t = (first && check_from != original) ? original : t;
        if (map_.grade_at(a, b) != final_t) map_.set_grade_at(a, b, final_t);
        return final_t;
      }
      first = false;
      if (next == nb_.future.size()) {
        map_.erase_at(a, b);
        ++stats_.trims;
        return kInfinity;
      }
      t = nb_.future[next].t;
      added.clear();
      while (next < nb_.future.size() && nb_.future[next].t == t) {
        Index x = nb_.future[next].vertex;
        added.push_back(x);
        nb_.present.insert(std::lower_bound(nb_.present.begin(), nb_.present.end(), x), x);
        ++next;
      }
      map_.set_grade_at(a, b, t);
      ++stats_.shifts;
    }
  }

 private:
  bool still_dominates(Index w, Grade t, const std::vector<Index>& added) const {
    for (Index x : added) {
      auto g = map_.grade_at(w, x);
      if (!g || *g > t) return false;
    }
    return true;
  }

  NeighborhoodMap& map_;
  CollapseStats& stats_;
  IndexedNeighborhood nb_;
  DominationScratch scratch_;
};

/// A stream is a list of canonical edges with non-decreasing grades.
inline void check_stream(std::span<const FilteredEdge> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u >= edges[i].v)
      throw std::invalid_argument("stream edge " + describe_edge(edges[i].u, edges[i].v) +
                                  " is not canonical");
    if (i > 0 && edges[i].t < edges[i - 1].t)
      throw std::invalid_argument("stream grades decrease at edge " +
                                  describe_edge(edges[i].u, edges[i].v));
  }
}

inline void finish(CollapseResult& r) {
  std::sort(r.kept.begin(), r.kept.end(), filtration_less);
  std::sort(r.removed.begin(), r.removed.end(), filtration_less);
}

/// Backward pass where the first test of edge e happens at check(t(e)).
template <class CheckGrade>
CollapseResult backward_pass(std::span<const FilteredEdge> edges,
                             const std::map<VertexId, Grade>& births, NeighborhoodLayout layout,
                             CheckGrade&& check) {
  CollapseResult r;
  r.births = births;
  NeighborhoodMap map(edges, layout);
  EdgeShifter shifter(map, r.stats);
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    auto a = *map.index_of(it->u), b = *map.index_of(it->v);
    Grade final_t = shifter.process(a, b, it->t, check(it->t));
    if (final_t == kInfinity)
      r.removed.push_back(*it);
    else
      r.kept.push_back({it->u, it->v, final_t});
  }
  finish(r);
  return r;
}

}  // namespace detail

/// Processes edges by non-increasing grade (ties in reverse (t, u, v) order),
/// delaying each dominated edge to the next grade where its neighborhood
/// grows and trimming it when none is left.
inline CollapseResult backward_collapse(const FilteredGraph& g,
                                        NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  return detail::backward_pass(g.edges(), g.births(), layout, [](Grade t) { return t; });
}

/// Streaming variant, processing `edges` in the given order: dominated edges ride a train to the right; each
/// critical edge stops the train members whose neighborhood it enlarges and
/// that are no longer dominated. Whatever is still on the train at the end
/// is trimmed.
inline CollapseResult forward_collapse_stream(std::span<const FilteredEdge> edges,
                                              const std::map<VertexId, Grade>& births,
                                              NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  using Index = NeighborhoodMap::Index;
  detail::check_stream(edges);
  CollapseResult r;
  r.births = births;

  // The map holds inserted edges keyed by position rather than grade:
  // critical edges get rank 0, train members their 1-based train position.
  // A train member at rank k lives in the graph of everything ranked <= k.
  // Edges not inserted yet sit at kInfinity and are never below a threshold.
  constexpr Grade kEverything = std::numeric_limits<Grade>::max();
  std::vector<FilteredEdge> staged;
  staged.reserve(edges.size());
  for (const auto& e : edges) staged.push_back({e.u, e.v, kInfinity});
  NeighborhoodMap map(staged, layout);

  IndexedNeighborhood nb;
  detail::DominationScratch scratch;

  struct Pending {
    Index a, b;
    std::size_t edge;
    Index witness;
    bool alive;
  };
  std::vector<Pending> train;            // indexed by rank - 1
  Grade next_rank = 1;

  auto full_check = [&](Index a, Index b, Grade rank) -> std::optional<Index> {
    ++r.stats.domination_checks;
    detail::split_neighborhood(map, a, b, rank, nb);
    return scratch.find_dominator(map, nb.present, rank);
  };

  auto witness_holds = [&](Index a, Index b, Index w, Grade rank) {
    ++r.stats.witness_rechecks;
    auto ga = map.grade_at(a, w), gb = map.grade_at(b, w);
    if (!ga || !gb || *ga > rank || *gb > rank) return false;
    detail::split_neighborhood(map, a, b, rank, nb);
    for (Index x : nb.present) {
      if (x == w) continue;
      auto gx = map.grade_at(w, x);
      if (!gx || *gx > rank) return false;
    }
    return true;
  };

  // Max-heap of train ranks whose neighborhood may have grown.
  std::priority_queue<std::size_t> dirty;
  std::vector<char> queued;

  auto enqueue_neighbors = [&](Index x, Index y) {
    // Train edges (x, z) with y ~ z gain y as a common neighbor; same for (y, z) with x ~ z.
    for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
      for (const auto& en : map.row(p)) {
        if (en.t < 1 || en.t == kInfinity) continue;
        auto gz = map.grade_at(q, en.neighbor);
        if (!gz || *gz > en.t) continue;
        auto pos = static_cast<std::size_t>(en.t) - 1;
        if (!queued[pos]) {
          queued[pos] = 1;
          dirty.push(pos);
        }
      }
    }
  };

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    Index a = *map.index_of(e.u), b = *map.index_of(e.v);
    map.set_grade_at(a, b, next_rank);
    if (auto w = full_check(a, b, kEverything)) {
      train.push_back({a, b, i, *w, true});
      queued.push_back(0);
      next_rank += 1;
      continue;
    }
    map.set_grade_at(a, b, 0);
    r.kept.push_back(e);
    enqueue_neighbors(a, b);
    while (!dirty.empty()) {
      std::size_t pos = dirty.top();
      dirty.pop();
      queued[pos] = 0;
      auto& p = train[pos];
      if (!p.alive) continue;
      Grade rank = static_cast<Grade>(pos + 1);
      if (witness_holds(p.a, p.b, p.witness, rank)) continue;
      if (auto w = full_check(p.a, p.b, rank)) {
        p.witness = *w;
        continue;
      }
      p.alive = false;
      map.set_grade_at(p.a, p.b, 0);
      const auto& orig = edges[p.edge];
      r.kept.push_back({orig.u, orig.v, e.t});
      ++r.stats.shifts;
      enqueue_neighbors(p.a, p.b);
    }
  }
  for (const auto& p : train)
    if (p.alive) {
      r.removed.push_back(edges[p.edge]);
      ++r.stats.trims;
    }
  detail::finish(r);
  return r;
}

inline CollapseResult forward_collapse(const FilteredGraph& g,
                                       NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  return forward_collapse_stream(g.edges(), g.births(), layout);
}

/// Backward collapse of an explicit stream: equal-grade edges are handled in
/// reverse stream order instead of reverse (t, u, v) order.
inline CollapseResult backward_collapse_stream(std::span<const FilteredEdge> edges,
                                               const std::map<VertexId, Grade>& births,
                                               NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  detail::check_stream(edges);
  return detail::backward_pass(edges, births, layout, [](Grade t) { return t; });
}

inline CollapseResult collapse_once(const FilteredGraph& g, Algorithm algorithm,
                                    NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  return algorithm == Algorithm::backward ? backward_collapse(g, layout)
                                          : forward_collapse(g, layout);
}

struct FixpointResult {
  CollapseResult result;
  std::vector<std::size_t> round_sizes;  // initial size, then the size after each round
};

/// Applies `apply` (FilteredGraph -> CollapseResult) to its own output until
/// a round changes nothing or `max_rounds` rounds have run.
template <class Round>
FixpointResult iterate_rounds(const FilteredGraph& g, int max_rounds, Round&& apply) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  FixpointResult out;
  out.round_sizes.push_back(g.edge_count());
  FilteredGraph current = g;
  CollapseStats total;
  for (int round = 0; round < max_rounds; ++round) {
    CollapseResult r = apply(current);
    total += r.stats;
    out.round_sizes.push_back(r.kept.size());
    bool unchanged = r.kept == current.edges();
    current = FilteredGraph::from_edges(std::move(r.kept), g.births());
    if (unchanged) break;
  }
  out.result.kept = current.edges();
  out.result.births = g.births();
  out.result.stats = total;
  // Everything not kept is reported with its original grade.
  std::vector<std::pair<VertexId, VertexId>> kept_pairs;
  for (const auto& e : out.result.kept) kept_pairs.emplace_back(e.u, e.v);
  std::sort(kept_pairs.begin(), kept_pairs.end());
  for (const auto& e : g.edges())
    if (!std::binary_search(kept_pairs.begin(), kept_pairs.end(), std::pair{e.u, e.v}))
      out.result.removed.push_back(e);
  detail::finish(out.result);
  return out;
}

/// Re-applies the algorithm to its own output until a round changes nothing
/// or `max_rounds` rounds have run.
inline FixpointResult collapse_to_fixpoint(const FilteredGraph& g, Algorithm algorithm,
                                           int max_rounds,
                                           NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  return iterate_rounds(g, max_rounds,
                        [&](const FilteredGraph& h) { return collapse_once(h, algorithm, layout); });
}

}  // namespace flagcollapse
