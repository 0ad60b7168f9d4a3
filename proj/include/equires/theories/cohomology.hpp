#pragma once

#include <string>
#include <vector>

#include "equires/resolution/validate.hpp"

namespace equires {

enum class Theory { hg, hdl, k };

inline const char* to_string(Theory t) {
  switch (t) {
    case Theory::hg: return "H_G";
    case Theory::hdl: return "H_dl";
    case Theory::k: return "K";
  }
  return "?";
}

struct TheoryResult {
  Theory theory = Theory::hg;
  std::string space;
  int max_degree = -1;  ///< D, for H_G
  long window = -1;     ///< W, for H_dl and K
  std::vector<std::size_t> dims;  ///< H_G: per q <= D; H_dl: per cochain degree; K: {K^0, K^1}
  std::size_t even = 0;
  std::size_t odd = 0;
  std::vector<Integer> invariant_factors;  ///< K: torsion of K^0 (empty when torsion-free)
  std::string note;
};

inline void require_valid(const ResolutionSpace& sp) {
  ValidationReport r = validate_resolution(sp);
  if (r.ok()) return;
  const ValidationIssue& i = r.issues.front();
  std::string where = i.stratum.empty() ? "" : " in stratum " + i.stratum;
  if (!i.cells.empty()) {
    where += " at cell";
    for (std::size_t c : i.cells) where += " " + std::to_string(c);
  }
  fail(ErrorKind::invalid_space, "invalid space " + sp.name + ": " + i.code + where + ": " + i.message);
}

/// Reduced equivariant cohomology: H^q = sum over 2j + k = q of H^k of the
/// compatibility complex with Borel coefficients of degree j.
inline TheoryResult equivariant_cohomology(const ResolutionSpace& sp, int max_degree, bool validate = true) {
  if (max_degree < 0) fail(ErrorKind::invalid_argument, "degree D must be nonnegative");
  if (validate) require_valid(sp);
  TheoryResult out;
  out.theory = Theory::hg;
  out.space = sp.name;
  out.max_degree = max_degree;
  out.dims.assign(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int j = 0; 2 * j <= max_degree; ++j) {
    SpaceComplexes sc = space_complexes(sp, CoefficientSpec::borel(j));
    GradedCohomology h = cohomology(compatibility_complex(sc).complex);
    for (std::size_t k = 0; k < h.dims.size() && 2 * j + static_cast<int>(k) <= max_degree; ++k)
      out.dims[2 * static_cast<std::size_t>(j) + k] += h.dims[k];
  }
  for (std::size_t q = 0; q < out.dims.size(); ++q) (q % 2 ? out.odd : out.even) += out.dims[q];
  return out;
}

inline TheoryResult delocalized_cohomology(const ResolutionSpace& sp, long window, bool validate = true) {
  if (window < 0) fail(ErrorKind::invalid_argument, "window W must be nonnegative");
  if (validate) require_valid(sp);
  TheoryResult out;
  out.theory = Theory::hdl;
  out.space = sp.name;
  out.window = window;
  GradedCohomology h = cohomology(compatibility_complex(space_complexes(sp, CoefficientSpec::rep(window))).complex);
  out.dims = h.dims;
  out.even = h.even();
  out.odd = h.odd();
  return out;
}

}  // namespace equires
