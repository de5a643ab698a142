#pragma once

// Point clouds, Euclidean Rips graphs and seeded synthetic samples.

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagcollapse/core.hpp"
#include "flagcollapse/zigzag.hpp"

namespace flagcollapse {

struct PointCloud {
  std::vector<std::vector<double>> points;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }

  void validate() const {
    if (points.empty()) throw std::invalid_argument("point cloud is empty");
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].size() != dimension())
        throw std::invalid_argument("point " + std::to_string(i) + " has dimension " +
                                    std::to_string(points[i].size()) + ", expected " +
                                    std::to_string(dimension()));
  }
};

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Vertices 0..n-1 born at 0; edge uv at grade |p_u - p_v| when that is at
/// most `threshold` (which may be infinite).
inline FilteredGraph rips_graph(const PointCloud& p, Grade threshold = kInfinity) {
  p.validate();
  if (!(threshold > 0)) throw std::invalid_argument("threshold must be positive");
  std::vector<FilteredEdge> edges;
  std::map<VertexId, Grade> births;
  for (std::size_t i = 0; i < p.size(); ++i) {
    births.emplace(static_cast<VertexId>(i), 0.0);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double d = euclidean(p.points[i], p.points[j]);
      if (d <= threshold) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), d});
    }
  }
  return FilteredGraph::from_edges(std::move(edges), std::move(births));
}

enum class SampleKind { uniform_square, circle, regular_polygon, torus, complete_graph };

inline SampleKind parse_sample_kind(const std::string& s) {
  if (s == "uniform_square" || s == "uniform") return SampleKind::uniform_square;
  if (s == "circle") return SampleKind::circle;
  if (s == "regular_polygon" || s == "polygon") return SampleKind::regular_polygon;
  if (s == "torus") return SampleKind::torus;
  if (s == "complete_graph" || s == "complete") return SampleKind::complete_graph;
  throw std::invalid_argument("unknown sample kind '" + s + "'");
}

inline constexpr double kTorusMajor = 2.0;
inline constexpr double kTorusMinor = 1.0;

/// n seeded points. uniform_square: [0,1]^2. circle: uniform angles on the
/// unit circle. regular_polygon: vertices of the regular n-gon on the unit
/// circle (no randomness). torus: uniform angles on the torus with radii
/// 2 and 1 in R^3.
inline PointCloud sample_points(SampleKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2 * std::numbers::pi;
  PointCloud p;
  p.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case SampleKind::uniform_square: {
        double x = unit(rng), y = unit(rng);
        p.points.push_back({x, y});
        break;
      }
      case SampleKind::circle: {
        double a = two_pi * unit(rng);
        p.points.push_back({std::cos(a), std::sin(a)});
        break;
      }
      case SampleKind::regular_polygon: {
        double a = two_pi * static_cast<double>(i) / static_cast<double>(n);
        p.points.push_back({std::cos(a), std::sin(a)});
        break;
      }
      case SampleKind::torus: {
        double a = two_pi * unit(rng), b = two_pi * unit(rng);
        double ring = kTorusMajor + kTorusMinor * std::cos(b);
        p.points.push_back({ring * std::cos(a), ring * std::sin(a), kTorusMinor * std::sin(b)});
        break;
      }
      case SampleKind::complete_graph:
        throw std::invalid_argument("complete_graph is a graph, not a point cloud");
    }
  }
  return p;
}

/// K_n with every vertex and edge at grade 0.
inline FilteredGraph complete_graph(std::size_t n) {
  std::vector<FilteredEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  std::map<VertexId, Grade> births;
  for (std::size_t i = 0; i < n; ++i) {
    births.emplace(static_cast<VertexId>(i), 0.0);
    for (std::size_t j = i + 1; j < n; ++j)
      edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), 0.0});
  }
  return FilteredGraph::from_edges(std::move(edges), std::move(births));
}

/// Oscillating Rips zigzag: at step k = 1, 2, ... the edges of length at
/// most scales[k-1] are present, so an edge is included when the scale grows
/// past its length and removed when it drops below. Vertices are born at 1.
inline ZigzagFiltration oscillating_rips(const PointCloud& p, const std::vector<double>& scales) {
  p.validate();
  std::vector<ZigzagEvent> events;
  std::map<VertexId, Grade> births;
  for (std::size_t i = 0; i < p.size(); ++i) {
    births.emplace(static_cast<VertexId>(i), 1.0);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double d = euclidean(p.points[i], p.points[j]);
      bool present = false;
      for (std::size_t k = 0; k < scales.size(); ++k) {
        bool now = d <= scales[k];
        if (now != present)
          events.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j),
                            static_cast<Grade>(k + 1),
                            now ? Direction::inclusion : Direction::removal});
        present = now;
      }
    }
  }
  return ZigzagFiltration::from_events(std::move(events), std::move(births));
}

}  // namespace flagcollapse
