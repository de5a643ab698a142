#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flagcollapse/approx.hpp"
#include "flagcollapse/oracle.hpp"
#include "test_support.hpp"

using namespace flagcollapse;
using namespace testing_support;

namespace {

// Grades mapped through log, for the multiplicative bound.
oracle::PersistenceDiagram log_grades(oracle::PersistenceDiagram d) {
  for (auto& p : d.points) {
    p.birth = std::log(p.birth);
    if (p.death != kInfinity) p.death = std::log(p.death);
  }
  return d;
}

}  // namespace

TEST(Approx, ZeroEpsilonIsExact) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) {
    auto g = random_graph(rng, 5 + rng() % 20, 0.6, it % 2 ? 0 : 4);
    auto exact = backward_collapse(g);
    auto a = approx_collapse(g, ApproxParams::additive(0));
    EXPECT_EQ(a.kept, exact.kept);
    EXPECT_EQ(a.removed, exact.removed);
    auto pos = rips_graph(random_points(rng, 10, 2));
    EXPECT_EQ(approx_collapse(pos, ApproxParams::multiplicative(1)).kept, backward_collapse(pos).kept);
  }
}

TEST(Approx, RejectsBadParameters) {
  auto g = FilteredGraph::from_edges({{0, 1, 0}, {1, 2, 1}});
  EXPECT_THROW(approx_collapse(g, ApproxParams::additive(-0.1)), std::invalid_argument);
  EXPECT_THROW(approx_collapse(g, ApproxParams::multiplicative(0.5)), std::invalid_argument);
  // grade 0 has no logarithm
  EXPECT_THROW(approx_collapse(g, ApproxParams::multiplicative(2)), std::invalid_argument);
}

TEST(Approx, FirstShiftIsAtLeastEpsilon) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto g = rips_graph(random_points(rng, 15, 2));
    for (double eps : {0.05, 0.2}) {
      auto r = approx_collapse(g, ApproxParams::additive(eps));
      std::map<std::pair<VertexId, VertexId>, Grade> original;
      for (const auto& e : g.edges()) original[{e.u, e.v}] = e.t;
      for (const auto& e : r.kept) {
        Grade t0 = original[{e.u, e.v}];
        EXPECT_TRUE(e.t == t0 || e.t >= t0 + eps);
      }
      EXPECT_LE(r.kept.size(), g.edge_count());
    }
  }
}

TEST(Approx, BottleneckWithinEpsilon) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    auto g = rips_graph(random_points(rng, 5 + rng() % 6, 2));
    auto before = oracle::flag_persistence(g, 2);
    for (double eps : {0.01, 0.1, 0.5}) {
      auto after = oracle::flag_persistence(approx_collapse(g, ApproxParams::additive(eps)).graph(), 2);
      for (int d = 0; d <= 2; ++d)
        EXPECT_LE(oracle::bottleneck_distance(before, after, d), eps + 1e-12);
    }
  }
}

TEST(Approx, MultiplicativeBoundOnLogScale) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 30; ++it) {
    auto p = random_points(rng, 5 + rng() % 6, 2);
    // births at 0 have no logarithm, so start the vertices at the shortest edge
    auto rips = rips_graph(p);
    Grade shortest = rips.edges().front().t;
    std::map<VertexId, Grade> births;
    for (const auto& [v, b] : rips.births()) births[v] = shortest;
    auto g = FilteredGraph::from_edges(rips.edges(), births);
    auto before = log_grades(oracle::flag_persistence(g, 2));
    for (double alpha : {1.1, 1.5, 3.0}) {
      auto r = approx_collapse(g, ApproxParams::multiplicative(alpha));
      auto after = log_grades(oracle::flag_persistence(r.graph(), 2));
      for (int d = 0; d <= 2; ++d)
        EXPECT_LE(oracle::bottleneck_distance(before, after, d), std::log(alpha) + 1e-9);
    }
  }
}

TEST(Approx, LargerFactorsRemoveMoreOnACircle) {
  auto g = rips_graph(sample_points(SampleKind::circle, 300, 9));
  ASSERT_EQ(g.edge_count(), 44850u);
  auto last = backward_collapse(g).kept.size();
  for (double alpha : {1.1, 2.0, 10.0}) {
    auto kept = approx_collapse(g, ApproxParams::multiplicative(alpha)).kept.size();
    EXPECT_LT(kept, last) << "alpha " << alpha;
    last = kept;
  }
}
