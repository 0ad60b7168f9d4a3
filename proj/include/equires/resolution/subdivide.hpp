#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equires/resolution/local_system.hpp"
#include "equires/resolution/space.hpp"

namespace equires {

/// One barycentric-style subdivision: every cell of dimension >= 1 is replaced
/// by the cone from a new barycenter over its subdivided boundary. Edges are
/// coned once per boundary entry, so loops subdivide correctly; cells of
/// dimension >= 2 must have a regular boundary.
template <typename T>
struct Subdivided {
  CellComplex complex;
  std::vector<std::size_t> apex;               ///< new cell -> old cell whose interior it lies in
  std::vector<std::vector<T>> transport;       ///< [new cell][entry], induced transports
  std::vector<std::map<std::size_t, long>> chain;  ///< old cell -> its subdivision as a chain of new cells
};

template <typename T>
Subdivided<T> subdivide_with(const CellComplex& c, const std::vector<std::vector<T>>& transport, const T& identity,
                             const std::function<T(const T&, const T&)>& compose) {
  Subdivided<T> out;
  std::vector<Cell> cells;
  auto add = [&](int dim, std::size_t apex) {
    cells.push_back(Cell{dim, {}});
    out.apex.push_back(apex);
    out.transport.emplace_back();
    return cells.size() - 1;
  };
  auto add_entry = [&](std::size_t cell, std::size_t face, long coeff, const T& t) {
    cells[cell].boundary.push_back({face, coeff});
    out.transport[cell].push_back(t);
  };
  // cells making up the closure of each old cell, with the transport from the
  // apex fiber of that cell to the old cell's fiber
  std::vector<std::vector<std::pair<std::size_t, T>>> sd(c.size());
  out.chain.resize(c.size());

  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.cell(a).dim < c.cell(b).dim; });

  for (std::size_t sigma : order) {
    const Cell& cell = c.cell(sigma);
    if (cell.dim == 0) {
      std::size_t v = add(0, sigma);
      sd[sigma] = {{v, identity}};
      out.chain[sigma] = {{v, 1}};
      continue;
    }
    const std::size_t b = add(0, sigma);
    struct Item {
      std::size_t cell;
      T to_sigma;
      long sign;  // orientation of this item in the subdivided boundary chain (top cells only)
    };
    std::vector<Item> boundary;
    if (cell.dim == 1) {
      for (std::size_t e = 0; e < cell.boundary.size(); ++e) {
        const auto& inc = cell.boundary[e];
        const auto& [v, t] = sd[inc.face].front();
        boundary.push_back({v, compose(transport[sigma][e], t), inc.coeff});
      }
    } else {
      std::map<std::size_t, std::size_t> seen;
      for (std::size_t e = 0; e < cell.boundary.size(); ++e) {
        const auto& inc = cell.boundary[e];
        for (const auto& [rho, t] : sd[inc.face]) {
          T to = compose(transport[sigma][e], t);
          long sign = 0;
          auto ch = out.chain[inc.face].find(rho);
          if (ch != out.chain[inc.face].end()) sign = inc.coeff * ch->second;
          auto it = seen.find(rho);
          if (it != seen.end()) {
            if (!(boundary[it->second].to_sigma == to))
              fail(ErrorKind::non_flat, "non-flat transport around cell " + std::to_string(sigma) + " during subdivision");
            if (sign != 0) {
              if (boundary[it->second].sign != 0)
                fail(ErrorKind::invalid_argument, "cell " + std::to_string(sigma) + " has an irregular boundary; subdivision needs regular cells in dimension >= 2");
              boundary[it->second].sign = sign;
            }
            continue;
          }
          seen.emplace(rho, boundary.size());
          boundary.push_back({rho, to, sign});
        }
      }
    }
    // cone cells, in increasing dimension of the base so faces exist first
    std::stable_sort(boundary.begin(), boundary.end(), [&](const Item& x, const Item& y) { return cells[x.cell].dim < cells[y.cell].dim; });
    std::map<std::size_t, std::size_t> cone_of;
    std::vector<std::pair<std::size_t, T>> closure{{b, identity}};
    for (const Item& item : boundary) {
      const int d = cells[item.cell].dim;
      const std::size_t k = add(d + 1, sigma);
      add_entry(k, item.cell, 1, item.to_sigma);
      if (d == 0) {
        add_entry(k, b, -1, identity);
      } else {
        for (const auto& inc : cells[item.cell].boundary) {
          auto it = cone_of.find(inc.face);
          if (it == cone_of.end())
            fail(ErrorKind::invalid_argument, "cell " + std::to_string(sigma) + " has an irregular boundary; subdivision needs regular cells in dimension >= 2");
          add_entry(k, it->second, -inc.coeff, identity);
        }
      }
      if (cell.dim >= 2) cone_of.emplace(item.cell, k);
      closure.push_back({item.cell, item.to_sigma});
      closure.push_back({k, identity});
      if (d == cell.dim - 1 && item.sign != 0) out.chain[sigma][k] += item.sign;
    }
    sd[sigma] = std::move(closure);
  }
  out.complex = CellComplex(std::move(cells));
  return out;
}

inline Subdivided<QMatrix> subdivide(const LocalSystem& l) {
  Subdivided<QMatrix> s = subdivide_with<QMatrix>(l.base, l.transport, QMatrix::identity(l.fiber_dim),
                                                  [](const QMatrix& a, const QMatrix& b) { return a * b; });
  return s;
}

inline LocalSystem subdivided_system(const LocalSystem& l) {
  Subdivided<QMatrix> s = subdivide(l);
  LocalSystem out = l;
  out.base = s.complex;
  out.transport = std::move(s.transport);
  return out;
}

inline CellComplex subdivide(const CellComplex& c) {
  std::vector<std::vector<int>> none(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) none[i].assign(c.cell(i).boundary.size(), 0);
  return subdivide_with<int>(c, none, 0, [](const int&, const int&) { return 0; }).complex;
}

/// Subdivides the total complex of a space whose strata (other than the open
/// one) have 0-dimensional complexes; monodromy elements are composed along
/// the subdivision.
inline ResolutionSpace subdivide_space(const ResolutionSpace& sp) {
  for (std::size_t i = 1; i < sp.strata.size(); ++i)
    if (sp.strata[i].complex.dimension() > 0)
      fail(ErrorKind::out_of_scope, "subdivision is implemented for spaces whose singular strata are points");
  const Stratum& open = sp.open();
  std::vector<std::vector<std::size_t>> elements(open.complex.size());
  std::size_t identity = 0;
  std::function<std::size_t(const std::size_t&, const std::size_t&)> compose = [](const std::size_t&, const std::size_t&) { return std::size_t{0}; };
  if (open.monodromy) {
    check_monodromy(open);
    const FiniteGroup& q = open.monodromy->group.extension_data().quotient;
    elements = open.monodromy->element;
    identity = q.identity;
    compose = [q](const std::size_t& a, const std::size_t& b) { return q.mul(a, b); };
  } else {
    for (std::size_t i = 0; i < open.complex.size(); ++i) elements[i].assign(open.complex.cell(i).boundary.size(), 0);
  }
  Subdivided<std::size_t> s = subdivide_with<std::size_t>(open.complex, elements, identity, compose);
  ResolutionSpace out = sp;
  out.name = sp.name + "/sd";
  Stratum& o = out.strata[0];
  o.complex = s.complex;
  if (o.monodromy) o.monodromy->element = s.transport;
  for (std::size_t i = 1; i < out.strata.size(); ++i) {
    Stratum& st = out.strata[i];
    std::set<std::size_t> face(sp.strata[i].face.begin(), sp.strata[i].face.end());
    std::map<std::size_t, CellImage> fib;
    std::vector<std::size_t> cells;
    for (std::size_t k = 0; k < s.complex.size(); ++k)
      if (face.count(s.apex[k])) {
        cells.push_back(k);
        fib.emplace(k, CellImage{sp.strata[i].fibration.at(s.apex[k]).cell, 1});
      }
    st.face = std::move(cells);
    st.fibration = std::move(fib);
  }
  return out;
}

}  // namespace equires
