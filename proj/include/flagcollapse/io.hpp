#pragma once

// Text formats for graphs, zigzag filtrations, diagrams and point clouds.
//
//   graph:    "u v t" per edge; "u u t" declares the birth of vertex u
//   zigzag:   "u v t +" or "u v t -"; "u u t" declares a birth
//   diagram:  "dim birth death", death may be "inf"
//   points:   one point per line, whitespace-separated coordinates
//
// '#' starts a comment. Grades are written in the shortest decimal form that
// reads back to the same double.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "flagcollapse/core.hpp"
#include "flagcollapse/oracle/diagram.hpp"
#include "flagcollapse/samplers.hpp"
#include "flagcollapse/zigzag.hpp"

namespace flagcollapse::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string format_grade(Grade t) {
  if (t == kInfinity) return "inf";
  if (t == -kInfinity) return "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t);
  if (ec != std::errc()) throw std::runtime_error("cannot format grade");
  return std::string(buf, end);
}

namespace detail {

/// Whitespace-separated fields of every non-empty, non-comment line.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>> tokenize(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(f);
    if (!fields.empty()) out.emplace_back(no, std::move(fields));
  }
  return out;
}

inline Grade parse_grade(std::size_t line, std::string_view s) {
  if (s == "inf" || s == "+inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || std::isnan(v))
    throw ParseError(line, "bad number '" + std::string(s) + "'");
  return v;
}

inline VertexId parse_vertex(std::size_t line, std::string_view s) {
  unsigned long long v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || v > std::numeric_limits<VertexId>::max())
    throw ParseError(line, "bad vertex id '" + std::string(s) + "'");
  return static_cast<VertexId>(v);
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

/// Births that differ from the first incident grade, plus isolated vertices.
inline std::map<VertexId, Grade> explicit_births(const std::map<VertexId, Grade>& births,
                                                 const std::map<VertexId, Grade>& first_seen) {
  std::map<VertexId, Grade> out;
  for (const auto& [v, b] : births) {
    auto it = first_seen.find(v);
    if (it == first_seen.end() || it->second != b) out.emplace(v, b);
  }
  return out;
}

}  // namespace detail

inline FilteredGraph read_graph(std::istream& in) {
  std::vector<FilteredEdge> edges;
  std::map<VertexId, Grade> births;
  for (const auto& [no, f] : detail::tokenize(in)) {
    if (f.size() != 3) throw ParseError(no, "expected 'u v t'");
    VertexId u = detail::parse_vertex(no, f[0]), v = detail::parse_vertex(no, f[1]);
    Grade t = detail::parse_grade(no, f[2]);
    if (std::isinf(t)) throw ParseError(no, "grade must be finite");
    if (u == v) {
      if (!births.emplace(u, t).second) throw ParseError(no, "second birth for vertex " + f[0]);
    } else {
      edges.push_back({u, v, t});
    }
  }
  try {
    return FilteredGraph::from_edges(std::move(edges), std::move(births));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid graph: ") + e.what());
  }
}

inline void write_graph(std::ostream& out, const FilteredGraph& g) {
  std::map<VertexId, Grade> first;
  for (const auto& e : g.edges()) {
    first.emplace(e.u, e.t);
    first.emplace(e.v, e.t);
  }
  for (const auto& [v, b] : detail::explicit_births(g.births(), first))
    out << v << ' ' << v << ' ' << format_grade(b) << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_grade(e.t) << '\n';
}

inline ZigzagFiltration read_zigzag(std::istream& in) {
  std::vector<ZigzagEvent> events;
  std::map<VertexId, Grade> births;
  for (const auto& [no, f] : detail::tokenize(in)) {
    if (f.size() < 3 || f.size() > 4) throw ParseError(no, "expected 'u v t +|-'");
    VertexId u = detail::parse_vertex(no, f[0]), v = detail::parse_vertex(no, f[1]);
    Grade t = detail::parse_grade(no, f[2]);
    if (std::isinf(t)) throw ParseError(no, "grade must be finite");
    if (u == v) {
      if (f.size() == 4 && f[3] != "+") throw ParseError(no, "vertices cannot be removed");
      if (!births.emplace(u, t).second) throw ParseError(no, "second birth for vertex " + f[0]);
      continue;
    }
    if (f.size() != 4 || (f[3] != "+" && f[3] != "-"))
      throw ParseError(no, "expected '+' or '-' after the grade");
    events.push_back({u, v, t, f[3] == "+" ? Direction::inclusion : Direction::removal});
  }
  try {
    return ZigzagFiltration::from_events(std::move(events), std::move(births));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid zigzag filtration: ") + e.what());
  }
}

inline void write_zigzag(std::ostream& out, const ZigzagFiltration& z) {
  std::map<VertexId, Grade> first;
  for (const auto& e : z.events()) {
    first.emplace(e.u, e.t);
    first.emplace(e.v, e.t);
  }
  for (const auto& [v, b] : detail::explicit_births(z.births(), first))
    out << v << ' ' << v << ' ' << format_grade(b) << '\n';
  for (const auto& e : z.events())
    out << e.u << ' ' << e.v << ' ' << format_grade(e.t) << ' '
        << (e.direction == Direction::inclusion ? '+' : '-') << '\n';
}

inline oracle::PersistenceDiagram read_diagram(std::istream& in,
                                               oracle::IntervalConvention convention) {
  oracle::PersistenceDiagram d{convention, {}};
  for (const auto& [no, f] : detail::tokenize(in)) {
    if (f.size() != 3) throw ParseError(no, "expected 'dim birth death'");
    int dim = 0;
    auto [end, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), dim);
    if (ec != std::errc() || end != f[0].data() + f[0].size() || dim < 0)
      throw ParseError(no, "bad dimension '" + f[0] + "'");
    Grade b = detail::parse_grade(no, f[1]), t = detail::parse_grade(no, f[2]);
    if (b > t) throw ParseError(no, "birth after death");
    d.points.push_back({dim, b, t});
  }
  d.normalize();
  return d;
}

inline void write_diagram(std::ostream& out, oracle::PersistenceDiagram d) {
  d.normalize();
  for (const auto& p : d.points)
    out << p.dim << ' ' << format_grade(p.birth) << ' ' << format_grade(p.death) << '\n';
}

inline PointCloud read_points(std::istream& in) {
  PointCloud p;
  for (const auto& [no, f] : detail::tokenize(in)) {
    std::vector<double> x;
    for (const auto& s : f) {
      Grade c = detail::parse_grade(no, s);
      if (std::isinf(c)) throw ParseError(no, "coordinate must be finite");
      x.push_back(c);
    }
    if (!p.points.empty() && x.size() != p.points.front().size())
      throw ParseError(no, "expected " + std::to_string(p.points.front().size()) +
                               " coordinates, got " + std::to_string(x.size()));
    p.points.push_back(std::move(x));
  }
  if (p.points.empty()) throw std::runtime_error("point cloud is empty");
  return p;
}

inline void write_points(std::ostream& out, const PointCloud& p) {
  for (const auto& x : p.points) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << format_grade(x[i]);
    out << '\n';
  }
}

// File-path conveniences.

inline FilteredGraph read_graph_file(const std::string& path) {
  auto f = detail::open_in(path);
  return read_graph(f);
}

inline void write_graph_file(const std::string& path, const FilteredGraph& g) {
  auto f = detail::open_out(path);
  write_graph(f, g);
}

inline ZigzagFiltration read_zigzag_file(const std::string& path) {
  auto f = detail::open_in(path);
  return read_zigzag(f);
}

inline void write_zigzag_file(const std::string& path, const ZigzagFiltration& z) {
  auto f = detail::open_out(path);
  write_zigzag(f, z);
}

}  // namespace flagcollapse::io
