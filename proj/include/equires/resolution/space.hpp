#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equires/groups/inclusion.hpp"
#include "equires/resolution/cell_complex.hpp"

namespace equires {

/// Image of a face cell under a boundary fibration. When the image has the
/// same dimension, `sign` is the degree of the cell map onto it.
struct CellImage {
  std::size_t cell;
  int sign = 1;

  friend bool operator==(const CellImage&, const CellImage&) = default;
};

/// Flat structure of a stratum's coefficient systems: `group` is an extension
/// whose normal part is the stratum's isotropy group; each boundary entry of
/// each cell carries the quotient element transporting face fiber to cell fiber.
struct Monodromy {
  GroupDesc group;
  std::vector<std::vector<std::size_t>> element;  ///< [cell][boundary entry]
};

/// Map from (part of) this stratum's complex to a deeper stratum, the third
/// side of a boundary-fibration triangle.
struct TriangleMap {
  std::size_t deeper;                       ///< stratum index
  std::map<std::size_t, std::size_t> cells;  ///< this stratum's cell -> deeper stratum's cell
  std::optional<SubgroupInclusion> inclusion;  ///< this group -> deeper group
};

struct Stratum {
  std::string name;
  GroupDesc group;
  CellComplex complex;
  std::vector<std::size_t> face;               ///< cells of the total complex (empty for the open stratum)
  std::map<std::size_t, CellImage> fibration;  ///< face cell -> cell of `complex`
  std::optional<SubgroupInclusion> inclusion;  ///< open group -> this group
  std::optional<Monodromy> monodromy;
  std::vector<TriangleMap> over;
  std::optional<long> fixed_point_weight;  ///< rotation weight at an isolated circle fixed point
};

/// Quotient-side resolution structure. Stratum 0 is the open stratum; its
/// complex is the total space Z(X). Every other stratum [K] has a face N_[K]
/// of the total complex fibering over its complex Z_[K].
struct ResolutionSpace {
  std::string name;
  std::vector<Stratum> strata;

  const CellComplex& total() const { return strata.at(0).complex; }
  const Stratum& open() const { return strata.at(0); }

  std::size_t stratum_index(const std::string& n) const {
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (strata[i].name == n) return i;
    fail(ErrorKind::invalid_argument, "no stratum named '" + n + "'");
  }

  /// Pairs (deeper, shallower) of the isotropy order among non-open strata.
  std::vector<std::pair<std::size_t, std::size_t>> order() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 1; i < strata.size(); ++i)
      for (const auto& t : strata[i].over) out.emplace_back(t.deeper, i);
    return out;
  }
};

/// Quotient element attached to a boundary entry (identity without monodromy).
inline std::size_t transport_element(const Stratum& s, std::size_t cell, std::size_t entry) {
  if (!s.monodromy) return 0;
  const auto& m = *s.monodromy;
  return m.element.at(cell).at(entry);
}

// ---------------------------------------------------------------------------
// Builders

/// The quotient of a sphere rotated about an axis: the interval from the north
/// pole (vertex 0) to the south pole (vertex 1). `inc` embeds the principal
/// isotropy k into the pole isotropy g, with g/k a circle.
inline ResolutionSpace build_sphere_rotation(const SubgroupInclusion& inc, long weight = 1) {
  const GroupDesc& g = inc.big();
  const GroupDesc& k = inc.small();
  if (g.lie_dimension() != k.lie_dimension() + 1)
    fail(ErrorKind::invalid_argument, "sphere rotation needs g/k to be a circle (Lie dimensions " +
                                          std::to_string(g.lie_dimension()) + " and " + std::to_string(k.lie_dimension()) + ")");
  if (weight == 0) fail(ErrorKind::invalid_argument, "fixed point weight must be nonzero");
  ResolutionSpace s;
  s.name = "sphere-rotation";
  Stratum open;
  open.name = "Z";
  open.group = k;
  open.complex = complexes::interval();
  s.strata.push_back(std::move(open));
  const char* names[] = {"N", "S"};
  for (std::size_t p = 0; p < 2; ++p) {
    Stratum pole;
    pole.name = names[p];
    pole.group = g;
    pole.complex = complexes::point();
    pole.face = {p};
    pole.fibration.emplace(p, CellImage{0, 1});
    pole.inclusion = inc;
    pole.fixed_point_weight = p == 0 ? weight : -weight;
    s.strata.push_back(std::move(pole));
  }
  return s;
}

/// Standard circle rotation of the sphere: G = S^1, K = {e}.
inline ResolutionSpace build_appendix_sphere() {
  ResolutionSpace s = build_sphere_rotation(SubgroupInclusion::trivial(GroupDesc::torus(1)));
  s.name = "appendix-sphere";
  return s;
}

/// The same rotation with an extra Z2 acting trivially: G = S^1 x Z2, K = Z2.
inline ResolutionSpace build_appendix_sphere_z2() {
  GroupDesc z2 = GroupDesc::finite(cyclic_group(2));
  GroupDesc g = GroupDesc::product({GroupDesc::torus(1), z2});
  ResolutionSpace s = build_sphere_rotation(SubgroupInclusion::product(g, {{1, SubgroupInclusion::identity(z2)}}));
  s.name = "appendix-sphere-z2";
  return s;
}

/// Trivial action of g on the space with quotient x: one stratum with isotropy g.
inline ResolutionSpace build_trivial_action(const GroupDesc& g, const CellComplex& x) {
  ResolutionSpace s;
  s.name = "trivial:" + g.name();
  Stratum open;
  open.name = "Z";
  open.group = g;
  open.complex = x;
  s.strata.push_back(std::move(open));
  return s;
}

/// Free action with quotient z: one stratum with trivial isotropy.
inline ResolutionSpace build_free_action(const GroupDesc& g, const CellComplex& z) {
  ResolutionSpace s;
  s.name = "free:" + g.name();
  Stratum open;
  open.name = "Z";
  open.group = GroupDesc::finite(trivial_group());
  open.complex = z;
  s.strata.push_back(std::move(open));
  return s;
}

/// S^1 x| Z2 (the Z2 acting by inversion) on the double cover of a circle:
/// unique isotropy S^1 over a circle whose loop carries the Z2 monodromy.
inline GroupDesc circle_reflection_group() {
  ZMatrix neg(1, 1);
  neg(0, 0) = -1;
  return GroupDesc::extension(GroupDesc::torus(1), cyclic_group(2), {ZMatrix::identity(1), neg}, {});
}

inline ResolutionSpace build_mobius_example() {
  ResolutionSpace s;
  s.name = "mobius";
  Stratum open;
  open.name = "Z";
  open.group = GroupDesc::torus(1);
  open.complex = complexes::circle();
  Monodromy m{circle_reflection_group(), {{}, {0, 1}}};
  open.monodromy = std::move(m);
  s.strata.push_back(std::move(open));
  return s;
}

}  // namespace equires
