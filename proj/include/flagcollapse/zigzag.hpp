#pragma once

// Zigzag flag filtrations and their reduction by shifting, cancelling and
// trimming dominated edge inclusions and removals.
//
// Step convention: at every grade t the inclusions at t happen first and
// give the graph G_t; the removals at t then give the intermediate graph
// G_t'. An edge interval [in, out] is therefore alive in G_t for
// in <= t <= out and in G_t' for in <= t < out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "flagcollapse/core.hpp"

namespace flagcollapse {

enum class Direction : std::uint8_t { inclusion, removal };

struct ZigzagEvent {
  VertexId u = 0;
  VertexId v = 0;
  Grade t = 0;
  Direction direction = Direction::inclusion;

  friend bool operator==(const ZigzagEvent&, const ZigzagEvent&) = default;
};

/// Order inside a filtration: by grade, inclusions before removals, then edge.
inline bool zigzag_less(const ZigzagEvent& a, const ZigzagEvent& b) {
  return std::tie(a.t, a.direction, a.u, a.v) < std::tie(b.t, b.direction, b.u, b.v);
}

inline std::string describe_event(const ZigzagEvent& e) {
  std::ostringstream os;
  os << (e.direction == Direction::inclusion ? "inclusion" : "removal") << " of "
     << describe_edge(e.u, e.v) << " at " << e.t;
  return os.str();
}

/// One inclusion of an edge and its next removal (kInfinity if none).
struct EdgeInterval {
  VertexId u = 0;
  VertexId v = 0;
  Grade in = 0;
  Grade out = kInfinity;

  friend bool operator==(const EdgeInterval&, const EdgeInterval&) = default;
};

class ZigzagFiltration {
 public:
  ZigzagFiltration() = default;

  /// Canonicalizes, sorts and validates. Per edge the events must alternate
  /// inclusion/removal starting with an inclusion, and a removal and the
  /// next inclusion cannot share a grade. Vertices without an explicit
  /// birth are born with their first incident event.
  static ZigzagFiltration from_events(std::vector<ZigzagEvent> events,
                                      std::map<VertexId, Grade> births = {}) {
    for (auto& e : events) {
      if (e.u == e.v) throw std::invalid_argument("self loop in " + describe_event(e));
      if (std::isnan(e.t) || std::isinf(e.t))
        throw std::invalid_argument("non-finite grade in " + describe_event(e));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    for (const auto& [v, b] : births)
      if (std::isnan(b) || std::isinf(b))
        throw std::invalid_argument("non-finite birth on vertex " + std::to_string(v));
    std::stable_sort(events.begin(), events.end(), zigzag_less);

    struct State {
      bool present = false;
      Grade last = -kInfinity;
    };
    std::map<std::pair<VertexId, VertexId>, State> state;
    for (const auto& e : events) {
      auto& s = state[{e.u, e.v}];
      bool inc = e.direction == Direction::inclusion;
      if (inc && s.present)
        throw std::invalid_argument("inconsistent event sequence: " + describe_event(e) +
                                    " while the edge is present");
      if (!inc && !s.present)
        throw std::invalid_argument("inconsistent event sequence: " + describe_event(e) +
                                    " while the edge is absent");
      if (inc && s.last == e.t)
        throw std::invalid_argument("inconsistent event sequence: " + describe_event(e) +
                                    " at the grade of its previous removal");
      s.present = inc;
      s.last = e.t;
      for (VertexId x : {e.u, e.v}) {
        auto it = births.find(x);
        if (it == births.end())
          births.emplace(x, e.t);
        else if (it->second > e.t)
          throw std::invalid_argument("vertex " + std::to_string(x) + " born at " +
                                      std::to_string(it->second) + " after " +
                                      describe_event(e));
      }
    }
    ZigzagFiltration z;
    z.events_ = std::move(events);
    z.births_ = std::move(births);
    return z;
  }

  static ZigzagFiltration from_intervals(const std::vector<EdgeInterval>& intervals,
                                         std::map<VertexId, Grade> births = {}) {
    std::vector<ZigzagEvent> events;
    for (const auto& i : intervals) {
      events.push_back({i.u, i.v, i.in, Direction::inclusion});
      if (i.out != kInfinity) events.push_back({i.u, i.v, i.out, Direction::removal});
    }
    return from_events(std::move(events), std::move(births));
  }

  /// The monotone zigzag with one inclusion per edge.
  static ZigzagFiltration from_graph(const FilteredGraph& g) {
    std::vector<ZigzagEvent> events;
    for (const auto& e : g.edges()) events.push_back({e.u, e.v, e.t, Direction::inclusion});
    return from_events(std::move(events), g.births());
  }

  const std::vector<ZigzagEvent>& events() const { return events_; }
  const std::map<VertexId, Grade>& births() const { return births_; }

  bool monotone() const {
    return std::none_of(events_.begin(), events_.end(),
                        [](const auto& e) { return e.direction == Direction::removal; });
  }

  /// Distinct event and vertex birth grades, increasing.
  std::vector<Grade> grades() const {
    std::vector<Grade> out;
    for (const auto& e : events_) out.push_back(e.t);
    for (const auto& [v, b] : births_) out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Inverse of from_graph; throws if the filtration has removals.
  FilteredGraph to_graph() const {
    if (!monotone()) throw std::invalid_argument("zigzag filtration has removals");
    std::vector<FilteredEdge> edges;
    for (const auto& e : events_) edges.push_back({e.u, e.v, e.t});
    return FilteredGraph::from_edges(std::move(edges), births_);
  }

  friend bool operator==(const ZigzagFiltration&, const ZigzagFiltration&) = default;

 private:
  std::vector<ZigzagEvent> events_;
  std::map<VertexId, Grade> births_;
};

/// Pairs each inclusion with the next removal of the same edge. Sorted by
/// (in, u, v).
inline std::vector<EdgeInterval> pair_events(const ZigzagFiltration& z) {
  std::vector<EdgeInterval> out;
  std::map<std::pair<VertexId, VertexId>, std::size_t> open;
  for (const auto& e : z.events()) {
    if (e.direction == Direction::inclusion) {
      open[{e.u, e.v}] = out.size();
      out.push_back({e.u, e.v, e.t, kInfinity});
    } else {
      auto it = open.find({e.u, e.v});
      out[it->second].out = e.t;
      open.erase(it);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.in, a.u, a.v) < std::tie(b.in, b.u, b.v);
  });
  return out;
}

struct ZigzagStats {
  std::size_t passes = 0;
  std::size_t domination_checks = 0;
  std::size_t shifts = 0;
  std::size_t cancellations = 0;
  std::size_t trims = 0;
  /// Shifts across a removal refused because the edge was not dominated
  /// in the intermediate graph.
  std::size_t refused_swaps = 0;

  std::size_t actions() const { return shifts + cancellations + trims; }

  ZigzagStats& operator+=(const ZigzagStats& o) {
    passes += o.passes;
    domination_checks += o.domination_checks;
    shifts += o.shifts;
    cancellations += o.cancellations;
    trims += o.trims;
    refused_swaps += o.refused_swaps;
    return *this;
  }
};

struct ZigzagCollapseResult {
  ZigzagFiltration filtration;
  ZigzagStats stats;
};

namespace detail {

/// Edge intervals over grade indices. in == -1 stands for "before the first
/// grade" and out == grade count for "never removed".
class ZigzagWorkspace {
 public:
  struct Occurrence {
    NeighborhoodMap::Index a, b;
    std::int64_t in, out;
    bool dead = false;
  };

  ZigzagWorkspace(std::vector<Grade> grades, std::vector<VertexId> ids,
                  std::vector<Occurrence> occ)
      : grades_(std::move(grades)), ids_(std::move(ids)), occ_(std::move(occ)) {
    rows_.resize(ids_.size());
    for (std::size_t k = 0; k < occ_.size(); ++k) attach(k);
  }

  static ZigzagWorkspace from(const ZigzagFiltration& z) {
    auto grades = z.grades();
    std::vector<VertexId> ids;
    for (const auto& e : z.events()) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index = [&](VertexId x) {
      return static_cast<NeighborhoodMap::Index>(std::lower_bound(ids.begin(), ids.end(), x) -
                                                 ids.begin());
    };
    auto grade_index = [&](Grade t) -> std::int64_t {
      if (t == kInfinity) return static_cast<std::int64_t>(grades.size());
      return std::lower_bound(grades.begin(), grades.end(), t) - grades.begin();
    };
    std::vector<Occurrence> occ;
    for (const auto& i : pair_events(z))
      occ.push_back({index(i.u), index(i.v), grade_index(i.in), grade_index(i.out)});
    return ZigzagWorkspace(std::move(grades), std::move(ids), std::move(occ));
  }

  std::vector<EdgeInterval> intervals() const {
    std::vector<EdgeInterval> out;
    auto grade = [&](std::int64_t g) {
      if (g < 0) return -kInfinity;
      if (g >= size()) return kInfinity;
      return grades_[static_cast<std::size_t>(g)];
    };
    for (const auto& o : occ_)
      if (!o.dead) out.push_back({ids_[o.a], ids_[o.b], grade(o.in), grade(o.out)});
    return out;
  }

  /// The same intervals read right to left: grades negated, inclusions and
  /// removals exchanged.
  ZigzagWorkspace reversed() const {
    std::vector<Grade> grades(grades_.rbegin(), grades_.rend());
    for (auto& t : grades) t = -t;
    std::vector<Occurrence> occ;
    const std::int64_t last = size() - 1;
    for (const auto& o : occ_)
      if (!o.dead) occ.push_back({o.a, o.b, last - o.out, last - o.in});
    return ZigzagWorkspace(std::move(grades), ids_, std::move(occ));
  }

  /// Processes inclusions from the last grade to the first, pushing each
  /// dominated one to the right until it stops, meets its removal (both
  /// are cancelled) or runs off the end (trimmed).
  void inclusion_pass(ZigzagStats& stats) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < occ_.size(); ++k)
      if (!occ_[k].dead && occ_[k].in >= 0) order.push_back(k);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const auto &p = occ_[x], &q = occ_[y];
      return std::tie(q.in, ids_[q.a], ids_[q.b]) < std::tie(p.in, ids_[p.a], ids_[p.b]);
    });
    std::map<std::int64_t, std::size_t> removals;
    for (const auto& o : occ_)
      if (!o.dead && o.out < size()) ++removals[o.out];

    for (std::size_t k : order) {
      auto& o = occ_[k];
      std::int64_t g = o.in;
      for (;;) {
        ++stats.domination_checks;
        if (!dominated(o.a, o.b, g, false)) break;
        if (removals.count(g)) {
          if (o.out == g) {
            o.dead = true;
            if (--removals[g] == 0) removals.erase(g);
            ++stats.cancellations;
            break;
          }
          ++stats.domination_checks;
          if (!dominated(o.a, o.b, g, true)) {
            ++stats.refused_swaps;
            break;
          }
          if (g + 1 == size()) {
            o.dead = true;
            ++stats.trims;
            break;
          }
          ++g;
        } else {
          // Between removals the graph only grows, so domination can only
          // fail again once an edge at u or v arrives.
          std::int64_t next = next_incident_inclusion(o.a, o.b, g);
          auto r = removals.upper_bound(g);
          if (r != removals.end()) next = std::min(next, r->first);
          if (next >= size()) {
            o.dead = true;
            ++stats.trims;
            break;
          }
          g = next;
        }
      }
      if (!o.dead && g != o.in) {
        detach(k);
        o.in = g;
        attach(k);
        ++stats.shifts;
      }
    }
  }

  std::int64_t size() const { return static_cast<std::int64_t>(grades_.size()); }

 private:
  static bool alive(const Occurrence& o, std::int64_t g, bool after_removals) {
    if (o.dead || o.in > g) return false;
    return after_removals ? g < o.out : g <= o.out;
  }

  static std::uint64_t key(NeighborhoodMap::Index x, NeighborhoodMap::Index y) {
    if (x > y) std::swap(x, y);
    return (std::uint64_t{x} << 32) | y;
  }

  void attach(std::size_t k) {
    const auto& o = occ_[k];
    rows_[o.a].push_back({o.b, k});
    rows_[o.b].push_back({o.a, k});
    pairs_[key(o.a, o.b)].push_back(k);
  }

  void detach(std::size_t k) {
    const auto& o = occ_[k];
    for (auto x : {o.a, o.b}) {
      auto& r = rows_[x];
      r.erase(std::find_if(r.begin(), r.end(), [&](const auto& en) { return en.second == k; }));
    }
    auto& p = pairs_[key(o.a, o.b)];
    p.erase(std::find(p.begin(), p.end(), k));
  }

  bool adjacent(NeighborhoodMap::Index x, NeighborhoodMap::Index y, std::int64_t g,
                bool after_removals) const {
    auto it = pairs_.find(key(x, y));
    if (it == pairs_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](std::size_t k) { return alive(occ_[k], g, after_removals); });
  }

  std::vector<NeighborhoodMap::Index> neighbors(NeighborhoodMap::Index x, std::int64_t g,
                                                bool after_removals) const {
    std::vector<NeighborhoodMap::Index> out;
    for (const auto& [y, k] : rows_[x])
      if (alive(occ_[k], g, after_removals)) out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool dominated(NeighborhoodMap::Index a, NeighborhoodMap::Index b, std::int64_t g,
                 bool after_removals) const {
    auto na = neighbors(a, g, after_removals), nb = neighbors(b, g, after_removals);
    std::vector<NeighborhoodMap::Index> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                          std::back_inserter(common));
    for (auto w : common) {
      bool all = std::all_of(common.begin(), common.end(), [&](auto x) {
        return x == w || adjacent(w, x, g, after_removals);
      });
      if (all) return true;
    }
    return false;
  }

  std::int64_t next_incident_inclusion(NeighborhoodMap::Index a, NeighborhoodMap::Index b,
                                       std::int64_t g) const {
    std::int64_t best = size();
    for (auto x : {a, b})
      for (const auto& [y, k] : rows_[x])
        if (!occ_[k].dead && occ_[k].in > g) best = std::min(best, occ_[k].in);
    return best;
  }

  std::vector<Grade> grades_;
  std::vector<VertexId> ids_;
  std::vector<Occurrence> occ_;
  std::vector<std::vector<std::pair<NeighborhoodMap::Index, std::size_t>>> rows_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> pairs_;
};

}  // namespace detail

/// Alternates an inclusion pass (right to left, shifting inclusions toward
/// the end) and a removal pass (the same on the reversed filtration,
/// shifting removals toward the beginning). Stops after `passes` rounds or
/// after a round without any shift, cancellation or trim.
inline ZigzagCollapseResult zigzag_collapse_with_stats(const ZigzagFiltration& z, int passes) {
  if (passes < 1)
    throw std::invalid_argument("passes must be at least 1, got " + std::to_string(passes));
  ZigzagCollapseResult r;
  auto ws = detail::ZigzagWorkspace::from(z);
  for (int p = 0; p < passes; ++p) {
    ZigzagStats round;
    round.passes = 1;
    ws.inclusion_pass(round);
    auto rev = ws.reversed();
    rev.inclusion_pass(round);
    ws = rev.reversed();
    r.stats += round;
    if (round.actions() == 0) break;
  }
  r.filtration = ZigzagFiltration::from_intervals(ws.intervals(), z.births());
  return r;
}

inline ZigzagFiltration zigzag_collapse(const ZigzagFiltration& z, int passes = 8) {
  return zigzag_collapse_with_stats(z, passes).filtration;
}

}  // namespace flagcollapse
