#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "equires/cochain/space_complexes.hpp"
#include "equires/resolution/local_system.hpp"

namespace equires {

struct ValidationIssue {
  std::string code;
  std::string stratum;
  std::vector<std::size_t> cells;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const {
    for (const auto& i : issues)
      if (i.code == code) return true;
    return false;
  }
};

namespace detail {

/// d^2 = 0 checked in the group ring Z[F] of the monodromy quotient: for every
/// pair (sigma, rho) the signed sum of path elements must vanish.
inline void check_group_ring_flatness(const Stratum& s, ValidationReport& r) {
  const CellComplex& c = s.complex;
  const auto& q = s.monodromy->group.extension_data().quotient;
  for (std::size_t sigma = 0; sigma < c.size(); ++sigma) {
    std::map<std::pair<std::size_t, std::size_t>, long> acc;
    const auto& outer = c.cell(sigma).boundary;
    for (std::size_t e = 0; e < outer.size(); ++e) {
      const std::size_t tau = outer[e].face;
      const auto& inner = c.cell(tau).boundary;
      for (std::size_t e2 = 0; e2 < inner.size(); ++e2) {
        const std::size_t f = q.mul(s.monodromy->element[sigma][e], s.monodromy->element[tau][e2]);
        acc[{inner[e2].face, f}] += outer[e].coeff * inner[e2].coeff;
      }
    }
    std::set<std::size_t> bad;
    for (const auto& [key, v] : acc)
      if (v != 0) bad.insert(key.first);
    for (std::size_t rho : bad)
      r.issues.push_back({"non_flat", s.name, {sigma, rho}, "monodromy is not flat: transports around cell " + std::to_string(sigma) +
                                                                 " do not cancel at cell " + std::to_string(rho)});
  }
}

inline bool check_complex(const Stratum& s, ValidationReport& r) {
  bool usable = true;
  for (const auto& [cell, msg] : s.complex.structural_problems()) {
    r.issues.push_back({"cell_structure", s.name, {cell}, "cell " + std::to_string(cell) + ": " + msg});
    usable = false;
  }
  if (!usable) return false;
  for (const auto& [sigma, rho] : s.complex.boundary_squared_violations())
    r.issues.push_back({"boundary_squared", s.name, {sigma, rho},
                        "boundary of boundary of cell " + std::to_string(sigma) + " has nonzero coefficient on cell " + std::to_string(rho)});
  if (s.monodromy) {
    try {
      check_monodromy(s);
    } catch (const Error& e) {
      r.issues.push_back({"monodromy", s.name, {}, e.what()});
      return false;
    }
    check_group_ring_flatness(s, r);
  }
  return true;
}

/// Chain-map property of psi# over Z with constant coefficients.
inline void check_fibration_chain_map(const ResolutionSpace& sp, const Stratum& s, ValidationReport& r) {
  const CellComplex& total = sp.total();
  const CellComplex& base = s.complex;
  auto image = [&](std::size_t cell, int dim) -> std::pair<std::size_t, long> {
    const CellImage& im = s.fibration.at(cell);
    if (base.cell(im.cell).dim != dim) return {0, 0};
    return {im.cell, im.sign};
  };
  for (std::size_t c : s.face) {
    const int q = total.cell(c).dim;
    if (q == 0) continue;
    std::map<std::size_t, long> lhs, rhs;
    // (d psi# v)(c)
    for (const auto& inc : total.cell(c).boundary) {
      auto [t, sign] = image(inc.face, q - 1);
      if (sign) lhs[t] += inc.coeff * sign;
    }
    // (psi# d v)(c)
    auto [t, sign] = image(c, q);
    if (sign)
      for (const auto& inc : base.cell(t).boundary) rhs[inc.face] += sign * inc.coeff;
    for (auto it = lhs.begin(); it != lhs.end();) it = it->second == 0 ? lhs.erase(it) : std::next(it);
    for (auto it = rhs.begin(); it != rhs.end();) it = it->second == 0 ? rhs.erase(it) : std::next(it);
    if (lhs != rhs)
      r.issues.push_back({"fibration_not_chain_map", s.name, {c}, "pullback along the fibration does not commute with d at face cell " + std::to_string(c)});
  }
}

inline bool check_fibration(const ResolutionSpace& sp, const Stratum& s, ValidationReport& r) {
  const CellComplex& total = sp.total();
  bool ok = true;
  std::set<std::size_t> face;
  for (std::size_t c : s.face) {
    if (c >= total.size()) {
      r.issues.push_back({"dangling_face", s.name, {c}, "face cell " + std::to_string(c) + " does not exist"});
      ok = false;
    } else {
      face.insert(c);
    }
  }
  if (!ok) return false;
  for (std::size_t c : face)
    for (const auto& inc : total.cell(c).boundary)
      if (!face.count(inc.face)) {
        r.issues.push_back({"face_not_closed", s.name, {c, inc.face}, "face contains cell " + std::to_string(c) + " but not its face " + std::to_string(inc.face)});
        ok = false;
      }
  for (const auto& [c, im] : s.fibration)
    if (!face.count(c)) {
      r.issues.push_back({"fibration", s.name, {c}, "fibration is defined on cell " + std::to_string(c) + " outside the face"});
      ok = false;
    }
  for (std::size_t c : face) {
    auto it = s.fibration.find(c);
    if (it == s.fibration.end()) {
      r.issues.push_back({"fibration", s.name, {c}, "fibration is undefined on face cell " + std::to_string(c)});
      ok = false;
      continue;
    }
    const CellImage& im = it->second;
    if (im.cell >= s.complex.size()) {
      r.issues.push_back({"fibration", s.name, {c}, "face cell " + std::to_string(c) + " maps to missing cell " + std::to_string(im.cell)});
      ok = false;
      continue;
    }
    const int dc = total.cell(c).dim, di = s.complex.cell(im.cell).dim;
    if (di > dc) {
      r.issues.push_back({"fibration", s.name, {c}, "face cell " + std::to_string(c) + " maps onto a cell of larger dimension"});
      ok = false;
    } else if (di == dc && im.sign != 1 && im.sign != -1) {
      r.issues.push_back({"fibration", s.name, {c}, "face cell " + std::to_string(c) + " maps with degree other than +-1"});
      ok = false;
    }
  }
  if (!ok) return false;
  std::set<std::size_t> hit;
  for (std::size_t c : face) {
    const std::size_t t = s.fibration.at(c).cell;
    hit.insert(t);
    const auto closure = s.complex.closure(t);
    for (const auto& inc : total.cell(c).boundary)
      if (!closure.count(s.fibration.at(inc.face).cell)) {
        r.issues.push_back({"fibration_not_cellular", s.name, {c, inc.face},
                            "face " + std::to_string(inc.face) + " of cell " + std::to_string(c) + " leaves the closure of its image"});
        ok = false;
      }
  }
  for (std::size_t t = 0; t < s.complex.size(); ++t)
    if (!hit.count(t)) {
      r.issues.push_back({"fibration_not_surjective", s.name, {t}, "cell " + std::to_string(t) + " of the base is not hit by the fibration"});
      ok = false;
    }
  if (ok) check_fibration_chain_map(sp, s, r);
  return ok;
}

}  // namespace detail

/// Checks every structural invariant of a resolution space. Problems are
/// reported, never thrown.
inline ValidationReport validate_resolution(const ResolutionSpace& sp) {
  ValidationReport r;
  if (sp.strata.empty()) {
    r.issues.push_back({"no_strata", "", {}, "space has no open stratum"});
    return r;
  }
  std::set<std::string> names;
  for (const auto& s : sp.strata)
    if (!names.insert(s.name).second) r.issues.push_back({"duplicate_stratum", s.name, {}, "stratum name is used twice"});
  const Stratum& open = sp.open();
  if (!open.face.empty() || !open.fibration.empty() || open.inclusion || !open.over.empty())
    r.issues.push_back({"open_stratum", open.name, {}, "the open stratum carries no face, fibration, inclusion or triangle data"});

  std::vector<bool> usable(sp.strata.size(), false);
  for (std::size_t i = 0; i < sp.strata.size(); ++i) usable[i] = detail::check_complex(sp.strata[i], r);
  if (!usable[0]) return r;

  std::vector<bool> fibered(sp.strata.size(), false);
  for (std::size_t i = 1; i < sp.strata.size(); ++i) {
    const Stratum& s = sp.strata[i];
    if (!s.inclusion) {
      r.issues.push_back({"inclusion", s.name, {}, "stratum has no inclusion of the open isotropy group"});
    } else if (!(s.inclusion->small() == open.group) || !(s.inclusion->big() == s.group)) {
      r.issues.push_back({"isotropy_order", s.name, {}, "inclusion must embed the open isotropy " + open.group.name() + " into " + s.group.name()});
    }
    if (s.fixed_point_weight && *s.fixed_point_weight == 0)
      r.issues.push_back({"fixed_point_weight", s.name, {}, "fixed point weight must be nonzero"});
    if (usable[i]) fibered[i] = detail::check_fibration(sp, s, r);
  }

  // faces that meet need distinct base dimensions and commuting triangles
  for (std::size_t a = 1; a < sp.strata.size(); ++a)
    for (std::size_t b = a + 1; b < sp.strata.size(); ++b) {
      if (!fibered[a] || !fibered[b]) continue;
      const Stratum& sa = sp.strata[a];
      const Stratum& sb = sp.strata[b];
      std::set<std::size_t> fa(sa.face.begin(), sa.face.end()), fb(sb.face.begin(), sb.face.end());
      std::vector<std::size_t> common;
      std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
      if (common.empty()) continue;
      const int da = sa.complex.dimension(), db = sb.complex.dimension();
      if (da == db) {
        r.issues.push_back({"ifs_equal_base_dimension", sa.name + "," + sb.name, common,
                            "intersecting faces of " + sa.name + " and " + sb.name + " fiber over bases of equal dimension " + std::to_string(da)});
        continue;
      }
      const std::size_t deep = da < db ? a : b, shallow = da < db ? b : a;
      const Stratum& sd = sp.strata[deep];
      const Stratum& ss = sp.strata[shallow];
      const TriangleMap* tri = nullptr;
      for (const auto& t : ss.over)
        if (t.deeper == deep) tri = &t;
      if (!tri) {
        r.issues.push_back({"triangle_missing", ss.name, common, "no map from " + ss.name + " to " + sd.name + " closing the fibration triangle"});
        continue;
      }
      for (std::size_t c : common) {
        const std::size_t via = ss.fibration.at(c).cell;
        auto it = tri->cells.find(via);
        if (it == tri->cells.end() || it->second != sd.fibration.at(c).cell)
          r.issues.push_back({"triangle_not_commuting", ss.name + "," + sd.name, {c},
                              "fibration triangle does not commute at cell " + std::to_string(c)});
      }
    }

  // triangle maps: targets, isotropy order reversal, acyclicity
  std::map<std::size_t, std::set<std::size_t>> deeper_of;
  for (std::size_t i = 1; i < sp.strata.size(); ++i)
    for (const auto& t : sp.strata[i].over) {
      if (t.deeper == 0 || t.deeper >= sp.strata.size() || t.deeper == i) {
        r.issues.push_back({"isotropy_order", sp.strata[i].name, {}, "triangle map names an invalid deeper stratum"});
        continue;
      }
      deeper_of[i].insert(t.deeper);
      const Stratum& sd = sp.strata[t.deeper];
      if (!t.inclusion || !(t.inclusion->small() == sp.strata[i].group) || !(t.inclusion->big() == sd.group))
        r.issues.push_back({"isotropy_order", sp.strata[i].name, {},
                            "isotropy of " + sd.name + " must contain the isotropy of " + sp.strata[i].name});
      for (const auto& [from, to] : t.cells)
        if (from >= sp.strata[i].complex.size() || to >= sd.complex.size())
          r.issues.push_back({"triangle_map", sp.strata[i].name, {from}, "triangle map references a missing cell"});
    }
  std::map<std::size_t, int> state;
  bool cyclic = false;
  auto visit = [&](auto&& self, std::size_t v) -> void {
    state[v] = 1;
    for (std::size_t w : deeper_of[v]) {
      if (state[w] == 1) cyclic = true;
      else if (state[w] == 0) self(self, w);
    }
    state[v] = 2;
  };
  for (std::size_t i = 1; i < sp.strata.size(); ++i)
    if (state[i] == 0) visit(visit, i);
  if (cyclic) r.issues.push_back({"isotropy_poset_cycle", "", {}, "the isotropy order has a cycle"});

  // flatness of the declared coefficient systems and compatibility of the
  // comparison maps with transports, on sample coefficients
  if (r.ok()) {
    for (const auto& spec : {CoefficientSpec::borel(0), CoefficientSpec::borel(1), CoefficientSpec::borel(2), CoefficientSpec::rep(1)}) {
      try {
        SpaceComplexes sc = space_complexes(sp, spec);
        for (const auto& p : sc.parts) {
          const std::size_t length = std::max({sc.total.length(), p.base.length(), p.face.length()});
          detail::check_chain_map(sc.total, p.face, p.restrict_map, length, "restriction to the face of " + p.name);
          detail::check_chain_map(p.base, p.face, p.compare_map, length, "comparison map of " + p.name);
        }
      } catch (const Error& e) {
        const std::string what = spec.kind == FiberKind::borel ? "Borel degree " + std::to_string(spec.degree) : "representation window 1";
        std::string code = e.kind() == ErrorKind::non_flat ? "non_flat" : e.kind() == ErrorKind::not_chain_map ? "comparison_not_chain_map" : "coefficients";
        r.issues.push_back({code, "", {}, what + ": " + e.what()});
      }
    }
  }
  return r;
}

}  // namespace equires
