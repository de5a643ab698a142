#pragma once

// Linear algebra over Z/2 on dense bit vectors.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace flagcollapse::oracle::gf2 {

using Vector = boost::dynamic_bitset<>;

inline Vector unit(std::size_t size, std::size_t i) {
  Vector v(size);
  v.set(i);
  return v;
}

/// Row echelon basis keyed by lowest set bit. Every stored row carries a tag
/// vector that records how it was formed, so reductions can report their
/// coordinates.
class Echelon {
 public:
  explicit Echelon(std::size_t tag_size = 0) : tag_size_(tag_size) {}

  /// Reduces v in place; `tag` accumulates the tags of the rows used.
  /// Returns true when v reduced to zero.
  bool reduce(Vector& v, Vector& tag) const {
    for (auto p = v.find_first(); p != Vector::npos; p = v.find_first()) {
      auto it = pivot_.find(p);
      if (it == pivot_.end()) return false;
      v ^= rows_[it->second];
      tag ^= tags_[it->second];
    }
    return true;
  }

  bool in_span(Vector v) const {
    Vector tag(tag_size_);
    return reduce(v, tag);
  }

  /// Adds v with the given tag. Returns false (and stores nothing) when v is
  /// already in the span.
  bool add(Vector v, Vector tag) {
    if (reduce(v, tag)) return false;
    pivot_.emplace(v.find_first(), rows_.size());
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    return true;
  }

  bool add(Vector v) { return add(std::move(v), Vector(tag_size_)); }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t tag_size_;
  std::vector<Vector> rows_;
  std::vector<Vector> tags_;
  std::unordered_map<std::size_t, std::size_t> pivot_;
};

inline std::size_t rank(const std::vector<Vector>& vs) {
  Echelon e;
  for (const auto& v : vs) e.add(v);
  return e.rank();
}

/// Basis of the null space of the matrix whose columns are `columns`,
/// as coefficient vectors over the column indices.
inline std::vector<Vector> kernel(const std::vector<Vector>& columns) {
  const std::size_t n = columns.size();
  Echelon e(n);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v = columns[i];
    Vector tag = unit(n, i);
    if (e.reduce(v, tag))
      out.push_back(std::move(tag));
    else
      e.add(std::move(v), std::move(tag));
  }
  return out;
}

/// Linear combination of `vs` with coefficients `c`.
inline Vector combine(const std::vector<Vector>& vs, const Vector& c, std::size_t size) {
  Vector out(size);
  for (auto i = c.find_first(); i != Vector::npos; i = c.find_next(i)) out ^= vs[i];
  return out;
}

}  // namespace flagcollapse::oracle::gf2
