#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "equires/groups/inclusion.hpp"
#include "equires/groups/polynomial.hpp"
#include "equires/resolution/space.hpp"

namespace equires {

enum class FiberKind { borel, rep };

/// Flat coefficient system on a cell complex: a fixed fiber Q^n and, for every
/// boundary entry (cell, face), the transport from the face fiber to the cell fiber.
struct LocalSystem {
  CellComplex base;
  FiberKind kind = FiberKind::borel;
  GroupDesc group;
  int degree = 0;                   ///< Borel fibers: polynomial degree j
  long window = 0;                  ///< representation fibers: weight window W
  std::vector<IrredLabel> labels;   ///< representation fibers: coordinate labels
  std::size_t fiber_dim = 0;
  std::vector<std::vector<QMatrix>> transport;  ///< [cell][entry]
};

/// Constant system with fiber Q^n on `c`.
inline LocalSystem trivial_system(const CellComplex& c, std::size_t n) {
  LocalSystem l;
  l.base = c;
  l.fiber_dim = n;
  l.transport.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) l.transport[i].assign(c.cell(i).boundary.size(), QMatrix::identity(n));
  return l;
}

inline void check_monodromy(const Stratum& s) {
  if (!s.monodromy) return;
  const Monodromy& m = *s.monodromy;
  if (m.group.kind() != GroupDesc::Kind::extension || !(m.group.extension_data().normal == s.group))
    fail(ErrorKind::invalid_argument, "monodromy of stratum " + s.name + " must be an extension of its isotropy group");
  const std::size_t q = m.group.extension_data().quotient.order;
  if (m.element.size() != s.complex.size())
    fail(ErrorKind::invalid_argument, "monodromy of stratum " + s.name + " must list every cell");
  for (std::size_t c = 0; c < s.complex.size(); ++c) {
    if (m.element[c].size() != s.complex.cell(c).boundary.size())
      fail(ErrorKind::invalid_argument, "monodromy of stratum " + s.name + " must list every boundary entry of cell " + std::to_string(c));
    for (std::size_t f : m.element[c])
      if (f >= q) fail(ErrorKind::invalid_argument, "monodromy element out of range at cell " + std::to_string(c));
  }
}

/// Action of quotient element f of an extension on degree-j invariant
/// polynomials of its normal part, p -> p(C_f x), in InvariantBasis coordinates.
inline QMatrix borel_action_matrix(const GroupDesc& ext, int degree, std::size_t f) {
  const auto& x = ext.extension_data();
  InvariantBasis b(x.normal, degree);
  QMatrix m(b.size(), b.size());
  const QMatrix c = x.coordinate_action(f);
  for (std::size_t i = 0; i < b.size(); ++i) {
    QVector v = b.coordinates(b.basis()[i].substitute(c));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, i) = v[r];
  }
  return m;
}

/// Permutation of normal-part labels by quotient element f.
inline QMatrix rep_action_matrix(const GroupDesc& ext, const std::vector<IrredLabel>& labels, std::size_t f) {
  const auto& x = ext.extension_data();
  std::map<IrredLabel, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  QMatrix m(labels.size(), labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = index.find(x.act(f, labels[i]));
    if (it == index.end()) fail(ErrorKind::inconsistent_action, "label set is not stable under the monodromy");
    m(it->second, i) = 1;
  }
  return m;
}

namespace detail {

inline LocalSystem assemble_system(const Stratum& s, LocalSystem l, const std::vector<QMatrix>& action) {
  l.base = s.complex;
  l.transport.resize(s.complex.size());
  for (std::size_t c = 0; c < s.complex.size(); ++c) {
    const std::size_t n = s.complex.cell(c).boundary.size();
    l.transport[c].clear();
    for (std::size_t e = 0; e < n; ++e)
      l.transport[c].push_back(s.monodromy ? action.at(s.monodromy->element[c][e]) : QMatrix::identity(l.fiber_dim));
  }
  return l;
}

}  // namespace detail

/// Borel system of degree j on a stratum: fiber S^j(k*)^K.
inline LocalSystem borel_system(const ResolutionSpace& sp, std::size_t stratum, int degree) {
  if (degree < 0) fail(ErrorKind::invalid_argument, "degree must be nonnegative");
  const Stratum& s = sp.strata.at(stratum);
  check_monodromy(s);
  LocalSystem l;
  l.kind = FiberKind::borel;
  l.group = s.group;
  l.degree = degree;
  l.fiber_dim = InvariantBasis(s.group, degree).size();
  std::vector<QMatrix> action;
  if (s.monodromy)
    for (std::size_t f = 0; f < s.monodromy->group.extension_data().quotient.order; ++f)
      action.push_back(borel_action_matrix(s.monodromy->group, degree, f));
  return detail::assemble_system(s, std::move(l), action);
}

/// Labels used as coordinates of the representation fiber of a stratum. For
/// the open stratum the window is enlarged by the restrictions of every
/// stratum's window, so that all comparison maps land in it.
inline std::vector<IrredLabel> rep_labels(const ResolutionSpace& sp, std::size_t stratum, long window) {
  const Stratum& s = sp.strata.at(stratum);
  auto base = window_labels(s.group, window);
  if (stratum != 0) return base;
  std::set<IrredLabel> out(base.begin(), base.end());
  for (std::size_t i = 1; i < sp.strata.size(); ++i) {
    const Stratum& t = sp.strata[i];
    if (!t.inclusion) continue;
    for (const auto& l : window_labels(t.group, window)) {
      RepRingElem r = t.inclusion->restrict_label(l);
      for (const auto& [m, c] : r.terms()) out.insert(m);
    }
  }
  if (s.monodromy) {
    const auto& x = s.monodromy->group.extension_data();
    std::set<IrredLabel> closed;
    for (const auto& l : out)
      for (std::size_t f = 0; f < x.quotient.order; ++f) closed.insert(x.act(f, l));
    out = std::move(closed);
  }
  return {out.begin(), out.end()};
}

/// Representation system on a stratum: fiber the windowed R(K).
inline LocalSystem rep_system(const ResolutionSpace& sp, std::size_t stratum, long window) {
  const Stratum& s = sp.strata.at(stratum);
  check_monodromy(s);
  LocalSystem l;
  l.kind = FiberKind::rep;
  l.group = s.group;
  l.window = window;
  l.labels = rep_labels(sp, stratum, window);
  l.fiber_dim = l.labels.size();
  std::vector<QMatrix> action;
  if (s.monodromy)
    for (std::size_t f = 0; f < s.monodromy->group.extension_data().quotient.order; ++f)
      action.push_back(rep_action_matrix(s.monodromy->group, l.labels, f));
  return detail::assemble_system(s, std::move(l), action);
}

/// Fiber comparison psi#: stratum fiber -> open fiber, by restriction.
inline QMatrix comparison_matrix(const ResolutionSpace& sp, std::size_t stratum, const LocalSystem& open_system,
                                 const LocalSystem& stratum_system) {
  const Stratum& s = sp.strata.at(stratum);
  if (!s.inclusion) fail(ErrorKind::invalid_argument, "stratum " + s.name + " has no inclusion of the open isotropy");
  if (open_system.kind == FiberKind::borel) return poly_restriction_matrix(*s.inclusion, open_system.degree);
  return rep_restriction_matrix(*s.inclusion, stratum_system.labels, open_system.labels);
}

/// Restriction of a system to a closed subcomplex.
inline LocalSystem restrict_system(const LocalSystem& l, const Subcomplex& sub) {
  LocalSystem out = l;
  out.base = sub.complex;
  out.transport.clear();
  for (std::size_t id : sub.to_parent) out.transport.push_back(l.transport.at(id));
  return out;
}

}  // namespace equires
