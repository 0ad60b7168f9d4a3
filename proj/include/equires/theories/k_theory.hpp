#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "equires/theories/cohomology.hpp"

namespace equires {

inline constexpr const char* k_theory_scope_message = "K-theory direct model unavailable; use Chern isomorphism";

/// Reason the space falls outside the direct K-theory model, if any: some
/// component of the total space or of a stratum is not acyclic over Z.
inline std::optional<std::string> k_theory_scope_problem(const ResolutionSpace& sp) {
  for (const Stratum& s : sp.strata) {
    const CellComplex& c = s.complex;
    GradedCohomology h = integer_cohomology(cochain_complex(c, trivial_system(c, 1)));
    const std::size_t parts = c.components().size();
    if (h.dim(0) != parts) return "stratum " + s.name + " has a component with nontrivial cohomology";
    for (std::size_t q = 1; q < h.dims.size(); ++q)
      if (h.dims[q] != 0 || !h.torsion[q].empty())
        return "stratum " + s.name + " has a non-contractible component (H^" + std::to_string(q) + " != 0)";
  }
  return std::nullopt;
}

inline void require_k_scope(const ResolutionSpace& sp) {
  if (auto p = k_theory_scope_problem(sp)) fail(ErrorKind::out_of_scope, std::string(k_theory_scope_message) + " (" + *p + ")");
}

/// Resolution vector bundle on a space with contractible strata: a windowed
/// representation-ring element on every vertex of the total space and of each
/// stratum, compatible under the comparison maps.
struct KClass {
  std::vector<std::vector<RepRingElem>> values;  ///< [stratum][vertex position]

  bool is_zero() const {
    for (const auto& s : values)
      for (const auto& v : s)
        if (!v.is_zero()) return false;
    return true;
  }
};

struct ComponentValue {
  std::string stratum;
  std::size_t vertex;  ///< smallest vertex id of the component
  RepRingElem value;
};

/// The class read off at one vertex per stratum component.
inline std::vector<ComponentValue> component_values(const ResolutionSpace& sp, const KClass& k) {
  std::vector<ComponentValue> out;
  for (std::size_t i = 0; i < sp.strata.size(); ++i) {
    const CellComplex& c = sp.strata[i].complex;
    for (const auto& comp : c.components())
      for (std::size_t id : comp)
        if (c.cell(id).dim == 0) {
          out.push_back({sp.strata[i].name, id, k.values.at(i).at(c.position(id))});
          break;
        }
  }
  return out;
}

/// Degree-0 ambient cochain of the representation compatibility complex
/// holding the coefficients of k (the identity embedding).
inline QVector k_class_cochain(const SpaceComplexes& sc, const PullbackComplex& pc, const KClass& k) {
  if (k.values.size() != sc.systems.size()) fail(ErrorKind::invalid_argument, "K-class has the wrong number of strata");
  QVector v(pc.ambient_dims.at(0));
  for (std::size_t i = 0; i < sc.systems.size(); ++i) {
    const LocalSystem& sys = sc.systems[i];
    const std::size_t vertices = sys.base.count(0);
    if (k.values[i].size() != vertices) fail(ErrorKind::invalid_argument, "K-class has the wrong number of vertices on stratum " + std::to_string(i));
    for (std::size_t p = 0; p < vertices; ++p) {
      for (const auto& [l, c] : k.values[i][p].terms()) {
        auto it = std::find(sys.labels.begin(), sys.labels.end(), l);
        if (it == sys.labels.end()) fail(ErrorKind::invalid_argument, "K-class value leaves the window of stratum " + std::to_string(i));
        v[pc.offsets[0][i] + p * sys.fiber_dim + static_cast<std::size_t>(it - sys.labels.begin())] = Rational(c);
      }
    }
  }
  return v;
}

inline KClass k_class_from_cochain(const SpaceComplexes& sc, const PullbackComplex& pc, const std::vector<Integer>& v) {
  KClass k;
  for (std::size_t i = 0; i < sc.systems.size(); ++i) {
    const LocalSystem& sys = sc.systems[i];
    k.values.emplace_back();
    for (std::size_t p = 0; p < sys.base.count(0); ++p) {
      RepRingElem e(sys.group);
      for (std::size_t a = 0; a < sys.fiber_dim; ++a) e.add_term(sys.labels[a], v.at(pc.offsets[0][i] + p * sys.fiber_dim + a));
      k.values[i].push_back(std::move(e));
    }
  }
  return k;
}

struct KTheory {
  TheoryResult result;
  std::vector<KClass> generators;  ///< Z-basis of K^0 within the window
};

/// K^0 as the equalizer of windowed representation rings: integer kernel of
/// the degree-0 compatibility constraints stacked with d^0.
inline KTheory k_theory(const ResolutionSpace& sp, long window, bool validate = true) {
  if (window < 0) fail(ErrorKind::invalid_argument, "window W must be nonnegative");
  if (validate) require_valid(sp);
  require_k_scope(sp);
  SpaceComplexes sc = space_complexes(sp, CoefficientSpec::rep(window));
  PullbackComplex pc = compatibility_complex(sc);
  const std::size_t amb = pc.ambient_dims.at(0);
  QMatrix rows = vstack<Rational>({constraint_matrix(sc.total, sc.parts, pc.offsets[0], 0), ambient_differential(sc.total, sc.parts, 0)}, amb);
  ZMatrix lattice = integer_kernel(to_integer(rows));

  KTheory out;
  out.result.theory = Theory::k;
  out.result.space = sp.name;
  out.result.window = window;
  out.result.even = lattice.cols();
  out.result.odd = 0;
  out.result.dims = {lattice.cols(), 0};
  // the kernel is saturated, so Z^n / K^0 has no torsion; report K^0 itself
  if (lattice.cols()) out.result.invariant_factors = smith_normal_form(lattice).torsion();
  out.result.note = "K^1 reported as 0 on contractible strata; odd information is in H_dl odd";
  for (std::size_t c = 0; c < lattice.cols(); ++c) {
    std::vector<Integer> v(amb);
    for (std::size_t r = 0; r < amb; ++r) v[r] = lattice(r, c);
    out.generators.push_back(k_class_from_cochain(sc, pc, v));
  }
  return out;
}

struct ChernImage {
  QVector ambient;      ///< degree-0 ambient cochain of the representation complex
  QVector cochain;      ///< the same cocycle in compatibility-complex coordinates
  QVector coordinates;  ///< class in the basis of H^0_dl representatives
};

/// Ch_G on contractible strata: the coefficients of k placed unchanged in
/// degree-0 delocalized cochains.
inline ChernImage chern_character(const ResolutionSpace& sp, const KClass& k, long window) {
  require_k_scope(sp);
  SpaceComplexes sc = space_complexes(sp, CoefficientSpec::rep(window));
  PullbackComplex pc = compatibility_complex(sc);
  ChernImage out;
  out.ambient = k_class_cochain(sc, pc, k);
  out.cochain = pullback_coordinates(pc, 0, out.ambient);
  out.coordinates = class_coordinates(pc.complex, cohomology_basis(pc.complex, 0), 0, out.cochain);
  return out;
}

/// Rank of Ch_G on the K^0 generators, to compare with dim H_dl^even.
inline std::size_t chern_rank(const ResolutionSpace& sp, const KTheory& k) {
  if (k.generators.empty()) return 0;
  std::vector<QVector> images;
  for (const KClass& g : k.generators) images.push_back(chern_character(sp, g, k.result.window).coordinates);
  QMatrix m(images.front().size(), images.size());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = images[c][r];
  return rank(m);
}

}  // namespace equires
