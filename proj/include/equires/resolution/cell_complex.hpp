#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equires/core/error.hpp"
#include "equires/core/matrix.hpp"

namespace equires {

/// One entry of a cellular boundary: [cell : face] = coeff. A face may occur
/// in several entries (e.g. both ends of a loop), each with its own transport.
struct Incidence {
  std::size_t face;
  long coeff;

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct Cell {
  int dim = 0;
  std::vector<Incidence> boundary;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Finite CW complex with integer incidence numbers. Cell ids are indices
/// into `cells`; within one dimension cells are ordered by id.
class CellComplex {
 public:
  CellComplex() = default;
  explicit CellComplex(std::vector<Cell> cells) : cells_(std::move(cells)) { reindex(); }

  std::size_t add_cell(int dim, std::vector<Incidence> boundary = {}) {
    cells_.push_back(Cell{dim, std::move(boundary)});
    reindex();
    return cells_.size() - 1;
  }

  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t id) const { return cells_.at(id); }
  int dimension() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, c.dim);
    return d;
  }

  /// Ids of the q-cells, ascending.
  const std::vector<std::size_t>& cells_of_dim(int q) const {
    static const std::vector<std::size_t> none;
    if (q < 0 || static_cast<std::size_t>(q) >= by_dim_.size()) return none;
    return by_dim_[static_cast<std::size_t>(q)];
  }
  std::size_t count(int q) const { return cells_of_dim(q).size(); }
  /// Position of a cell among the cells of its dimension.
  std::size_t position(std::size_t id) const { return position_.at(id); }

  /// Structural problems that make the complex unusable (bad face ids or
  /// face dimensions), as human-readable messages keyed by cell id.
  std::vector<std::pair<std::size_t, std::string>> structural_problems() const {
    std::vector<std::pair<std::size_t, std::string>> out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i].dim < 0) out.emplace_back(i, "negative dimension");
      for (const auto& inc : cells_[i].boundary) {
        if (inc.face >= cells_.size()) out.emplace_back(i, "face id " + std::to_string(inc.face) + " does not exist");
        else if (cells_[inc.face].dim != cells_[i].dim - 1)
          out.emplace_back(i, "face " + std::to_string(inc.face) + " has dimension " + std::to_string(cells_[inc.face].dim));
      }
    }
    return out;
  }

  /// Integer boundary matrix from q-chains to (q-1)-chains.
  ZMatrix boundary_matrix(int q) const {
    ZMatrix m(count(q - 1), count(q));
    for (std::size_t c = 0; c < count(q); ++c)
      for (const auto& inc : cells_[cells_of_dim(q)[c]].boundary) m(position_.at(inc.face), c) += inc.coeff;
    return m;
  }

  /// Pairs (sigma, rho) with dim rho = dim sigma - 2 where the coefficient of rho
  /// in the boundary of the boundary of sigma is nonzero.
  std::vector<std::pair<std::size_t, std::size_t>> boundary_squared_violations() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < cells_.size(); ++s) {
      std::map<std::size_t, long> acc;
      for (const auto& a : cells_[s].boundary) {
        if (a.face >= cells_.size()) continue;
        for (const auto& b : cells_[a.face].boundary) acc[b.face] += a.coeff * b.coeff;
      }
      for (const auto& [r, v] : acc)
        if (v != 0) out.emplace_back(s, r);
    }
    return out;
  }

  /// The cell together with all its iterated faces.
  std::set<std::size_t> closure(std::size_t id) const {
    std::set<std::size_t> out;
    std::vector<std::size_t> stack{id};
    while (!stack.empty()) {
      std::size_t c = stack.back();
      stack.pop_back();
      if (c >= cells_.size() || !out.insert(c).second) continue;
      for (const auto& inc : cells_[c].boundary) stack.push_back(inc.face);
    }
    return out;
  }

  bool is_closed(const std::set<std::size_t>& ids) const {
    for (std::size_t c : ids)
      for (const auto& inc : cells_.at(c).boundary)
        if (!ids.count(inc.face)) return false;
    return true;
  }

  /// Connected components as sets of cell ids (via shared faces).
  std::vector<std::set<std::size_t>> components() const {
    std::vector<std::size_t> parent(cells_.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < cells_.size(); ++i)
      for (const auto& inc : cells_[i].boundary)
        if (inc.face < cells_.size()) parent[find(i)] = find(inc.face);
    std::map<std::size_t, std::set<std::size_t>> groups;
    for (std::size_t i = 0; i < cells_.size(); ++i) groups[find(i)].insert(i);
    std::vector<std::set<std::size_t>> out;
    for (auto& [root, ids] : groups) out.push_back(std::move(ids));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
  }

  friend bool operator==(const CellComplex& a, const CellComplex& b) { return a.cells_ == b.cells_; }

 private:
  void reindex() {
    by_dim_.clear();
    position_.assign(cells_.size(), 0);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const int d = cells_[i].dim;
      if (d < 0) continue;
      if (by_dim_.size() <= static_cast<std::size_t>(d)) by_dim_.resize(static_cast<std::size_t>(d) + 1);
      position_[i] = by_dim_[static_cast<std::size_t>(d)].size();
      by_dim_[static_cast<std::size_t>(d)].push_back(i);
    }
  }

  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> by_dim_;
  std::vector<std::size_t> position_;
};

/// A closed subset of cells re-indexed as its own complex.
struct Subcomplex {
  CellComplex complex;
  std::vector<std::size_t> to_parent;           ///< new id -> parent id
  std::map<std::size_t, std::size_t> from_parent;  ///< parent id -> new id
};

inline Subcomplex make_subcomplex(const CellComplex& parent, const std::set<std::size_t>& ids) {
  if (!parent.is_closed(ids)) fail(ErrorKind::invalid_argument, "subcomplex is not closed under taking faces");
  Subcomplex s;
  for (std::size_t id : ids) {
    s.from_parent.emplace(id, s.to_parent.size());
    s.to_parent.push_back(id);
  }
  std::vector<Cell> cells;
  for (std::size_t id : s.to_parent) {
    Cell c = parent.cell(id);
    for (auto& inc : c.boundary) inc.face = s.from_parent.at(inc.face);
    cells.push_back(std::move(c));
  }
  s.complex = CellComplex(std::move(cells));
  return s;
}

// ---------------------------------------------------------------------------
// Standard complexes

namespace complexes {

inline CellComplex point() { return CellComplex({Cell{0, {}}}); }

/// Vertices 0, 1 and the edge 2 with boundary v1 - v0.
inline CellComplex interval() { return CellComplex({Cell{0, {}}, Cell{0, {}}, Cell{1, {{1, 1}, {0, -1}}}}); }

/// One vertex and one loop edge.
inline CellComplex circle() { return CellComplex({Cell{0, {}}, Cell{1, {{0, 1}, {0, -1}}}}); }

/// n vertices and n edges around a cycle (n >= 2); vertices first.
inline CellComplex polygon(std::size_t n) {
  if (n < 2) fail(ErrorKind::invalid_argument, "polygon needs at least 2 vertices");
  std::vector<Cell> cells(n, Cell{0, {}});
  for (std::size_t i = 0; i < n; ++i) cells.push_back(Cell{1, {{(i + 1) % n, 1}, {i, -1}}});
  return CellComplex(std::move(cells));
}

/// polygon(n) with one 2-cell filling it.
inline CellComplex disk(std::size_t n) {
  CellComplex c = polygon(n);
  std::vector<Incidence> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back({n + i, 1});
  c.add_cell(2, std::move(b));
  return c;
}

/// Regular 2-sphere: a triangle with two 2-cells glued along it.
inline CellComplex sphere() {
  CellComplex c = polygon(3);
  c.add_cell(2, {{3, 1}, {4, 1}, {5, 1}});
  c.add_cell(2, {{3, -1}, {4, -1}, {5, -1}});
  return c;
}

/// Regular n x n square torus (n >= 3).
inline CellComplex torus(std::size_t n = 3) {
  if (n < 3) fail(ErrorKind::invalid_argument, "torus grid needs n >= 3");
  std::vector<Cell> cells(n * n, Cell{0, {}});
  auto v = [n](std::size_t i, std::size_t j) { return (i % n) * n + (j % n); };
  // horizontal edge h(i,j): v(i,j) -> v(i,j+1); vertical edge w(i,j): v(i,j) -> v(i+1,j)
  const std::size_t h0 = cells.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells.push_back(Cell{1, {{v(i, j + 1), 1}, {v(i, j), -1}}});
  const std::size_t w0 = cells.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells.push_back(Cell{1, {{v(i + 1, j), 1}, {v(i, j), -1}}});
  auto h = [&](std::size_t i, std::size_t j) { return h0 + v(i, j); };
  auto w = [&](std::size_t i, std::size_t j) { return w0 + v(i, j); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cells.push_back(Cell{2, {{h(i, j), 1}, {w(i, j + 1), 1}, {h(i + 1, j), -1}, {w(i, j), -1}}});
  return CellComplex(std::move(cells));
}

inline CellComplex disjoint_union(const CellComplex& a, const CellComplex& b) {
  std::vector<Cell> cells = a.cells();
  for (Cell c : b.cells()) {
    for (auto& inc : c.boundary) inc.face += a.size();
    cells.push_back(std::move(c));
  }
  return CellComplex(std::move(cells));
}

/// Complex by name: point, interval, circle, sphere, torus, polygon<n>, disk<n>.
inline CellComplex by_name(const std::string& name) {
  if (name == "point") return point();
  if (name == "interval") return interval();
  if (name == "circle") return circle();
  if (name == "sphere") return sphere();
  if (name == "torus") return torus();
  auto numbered = [&](const std::string& prefix) -> long {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return -1;
    std::string digits = name.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) || digits.size() > 3) return -1;
    return std::stol(digits);
  };
  if (long n = numbered("polygon"); n >= 2) return polygon(static_cast<std::size_t>(n));
  if (long n = numbered("disk"); n >= 2) return disk(static_cast<std::size_t>(n));
  fail(ErrorKind::invalid_argument, "unknown complex '" + name + "'");
}

}  // namespace complexes

}  // namespace equires
