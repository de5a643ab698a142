#pragma once

// Divide-and-conquer backward collapse. Contiguous grade ranges are reduced
// in parallel and merged sequentially; the output is identical to
// backward_collapse.

#include <algorithm>
#include <bit>
#include <future>
#include <utility>
#include <vector>

#include "flagcollapse/collapse.hpp"

namespace flagcollapse {

/// Contiguous ranges [bounds[i], bounds[i+1]) of the grade-sorted edge list.
/// Split points only fall between two different grades.
struct PartitionPlan {
  std::vector<std::size_t> bounds;

  std::size_t parts() const { return bounds.empty() ? 0 : bounds.size() - 1; }

  /// Halves every range `depth` times where a grade boundary allows it,
  /// snapping each split to the grade change closest to the midpoint.
  static PartitionPlan make(std::span<const FilteredEdge> edges, unsigned depth) {
    PartitionPlan plan;
    plan.bounds = {0, edges.size()};
    for (unsigned level = 0; level < depth; ++level) {
      std::vector<std::size_t> next{0};
      for (std::size_t i = 0; i + 1 < plan.bounds.size(); ++i) {
        auto lo = plan.bounds[i], hi = plan.bounds[i + 1];
        if (auto m = snapped_split(edges, lo, hi)) next.push_back(*m);
        next.push_back(hi);
      }
      plan.bounds = std::move(next);
    }
    return plan;
  }

 private:
  static std::optional<std::size_t> snapped_split(std::span<const FilteredEdge> edges,
                                                  std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return std::nullopt;
    const std::size_t mid = lo + (hi - lo) / 2;
    for (std::size_t d = 0; d < hi - lo; ++d) {
      if (mid >= d && mid - d > lo && edges[mid - d - 1].t != edges[mid - d].t) return mid - d;
      if (mid + d < hi && mid + d > lo && edges[mid + d - 1].t != edges[mid + d].t)
        return mid + d;
    }
    return std::nullopt;
  }
};

/// Parts for a thread budget: 2^ceil(log2 threads), reduced until every
/// part holds at least `min_leaf` edges.
inline unsigned default_parts(std::size_t edge_count, unsigned threads,
                              std::size_t min_leaf = 1024) {
  unsigned parts = std::bit_ceil(std::max(1u, threads));
  while (parts > 1 && edge_count / parts < min_leaf) parts /= 2;
  return parts;
}

namespace detail {

struct PartialCollapse {
  NeighborhoodMap map;                               // edges [0, hi) at their current grades
  std::vector<std::pair<std::size_t, Grade>> kept;   // edge index -> final grade
  std::vector<std::size_t> spilled;                  // dominated past the range end, decreasing
  CollapseStats stats;
};

class ParallelBackward {
 public:
  ParallelBackward(std::span<const FilteredEdge> edges, const PartitionPlan& plan,
                   NeighborhoodLayout layout)
      : edges_(edges), plan_(plan), layout_(layout) {}

  PartialCollapse run() { return solve(0, plan_.parts()); }

 private:
  // Backward collapse of parts [first, last) inside the graph of edges
  // [0, bounds[last]); earlier edges stay at their original grades.
  PartialCollapse solve(std::size_t first, std::size_t last) {
    if (last - first == 1) return leaf(plan_.bounds[first], plan_.bounds[last]);
    std::size_t middle = first + (last - first) / 2;
    auto left_task =
        std::async(std::launch::async, [this, first, middle] { return solve(first, middle); });
    PartialCollapse right = solve(middle, last);
    PartialCollapse left = left_task.get();
    return merge(std::move(left), std::move(right), plan_.bounds[middle]);
  }

  PartialCollapse leaf(std::size_t lo, std::size_t hi) {
    PartialCollapse p;
    p.map = NeighborhoodMap(edges_.subspan(0, hi), layout_);
    EdgeShifter shifter(p.map, p.stats);
    for (std::size_t i = hi; i-- > lo;) {
      auto [a, b] = indices(p.map, i);
      Grade t = shifter.process(a, b, edges_[i].t, edges_[i].t);
      if (t == kInfinity)
        p.spilled.push_back(i);
      else
        p.kept.emplace_back(i, t);
    }
    return p;
  }

  // Resumes the right state with the left spills, all entering at the first
  // grade of the right range.
  PartialCollapse merge(PartialCollapse left, PartialCollapse right, std::size_t split) {
    for (auto [i, t] : left.kept) {
      auto [a, b] = indices(right.map, i);
      right.map.set_grade_at(a, b, t);
    }
    const Grade entry = edges_[split].t;
    EdgeShifter shifter(right.map, right.stats);
    for (std::size_t i : left.spilled) {
      auto [a, b] = indices(right.map, i);
      Grade t = shifter.process(a, b, entry, entry);
      if (t == kInfinity)
        right.spilled.push_back(i);
      else
        right.kept.emplace_back(i, t);
    }
    right.kept.insert(right.kept.end(), left.kept.begin(), left.kept.end());
    right.stats += left.stats;
    return right;
  }

  std::pair<NeighborhoodMap::Index, NeighborhoodMap::Index> indices(const NeighborhoodMap& m,
                                                                    std::size_t i) const {
    return {*m.index_of(edges_[i].u), *m.index_of(edges_[i].v)};
  }

  std::span<const FilteredEdge> edges_;
  const PartitionPlan& plan_;
  NeighborhoodLayout layout_;
};

}  // namespace detail

/// Splits the edges into `parts` (a power of two) grade ranges, reduces them
/// concurrently and merges right to left. Ranges never split a grade, so
/// inputs with repeated grades get fewer parts rather than a different answer.
inline CollapseResult parallel_backward_collapse(
    const FilteredGraph& g, unsigned parts, NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  if (parts == 0 || !std::has_single_bit(parts))
    throw std::invalid_argument("parts must be a power of two, got " + std::to_string(parts));
  CollapseResult r;
  r.births = g.births();
  const auto& edges = g.edges();
  if (edges.empty()) return r;
  auto plan = PartitionPlan::make(edges, static_cast<unsigned>(std::countr_zero(parts)));
  auto partial = detail::ParallelBackward(edges, plan, layout).run();
  for (auto [i, t] : partial.kept) r.kept.push_back({edges[i].u, edges[i].v, t});
  for (auto i : partial.spilled) r.removed.push_back(edges[i]);
  r.stats = partial.stats;
  // Leaves count every spill as a trim; only the final spills are.
  r.stats.trims = r.removed.size();
  detail::finish(r);
  return r;
}

}  // namespace flagcollapse
