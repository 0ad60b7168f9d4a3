#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equires/cochain/pullback.hpp"
#include "equires/resolution/local_system.hpp"

namespace equires {

struct CoefficientSpec {
  FiberKind kind = FiberKind::borel;
  int degree = 0;   ///< Borel degree j
  long window = 0;  ///< representation window W

  static CoefficientSpec borel(int j) { return {FiberKind::borel, j, 0}; }
  static CoefficientSpec rep(long w) { return {FiberKind::rep, 0, w}; }
};

/// Everything needed to form the compatibility complex of a space for one
/// coefficient choice. Part k corresponds to stratum k + 1.
struct SpaceComplexes {
  CoefficientSpec spec;
  std::vector<LocalSystem> systems;       ///< per stratum
  std::vector<QMatrix> comparisons;       ///< per stratum (empty for the open one): stratum fiber -> open fiber
  Complex total;
  std::vector<PullbackPart> parts;
  std::vector<std::pair<std::size_t, std::size_t>> order;  ///< (deeper, shallower) part indices
};

inline LocalSystem coefficient_system(const ResolutionSpace& sp, std::size_t stratum, const CoefficientSpec& spec) {
  return spec.kind == FiberKind::borel ? borel_system(sp, stratum, spec.degree) : rep_system(sp, stratum, spec.window);
}

inline SpaceComplexes space_complexes(const ResolutionSpace& sp, const CoefficientSpec& spec) {
  SpaceComplexes out;
  out.spec = spec;
  for (std::size_t i = 0; i < sp.strata.size(); ++i) out.systems.push_back(coefficient_system(sp, i, spec));
  const CellComplex& total = sp.total();
  const LocalSystem& open = out.systems[0];
  const std::size_t n = open.fiber_dim;
  out.total = cochain_complex(total, open);
  out.comparisons.emplace_back();
  for (std::size_t i = 1; i < sp.strata.size(); ++i) {
    const Stratum& s = sp.strata[i];
    const LocalSystem& sys = out.systems[i];
    QMatrix r = comparison_matrix(sp, i, open, sys);
    out.comparisons.push_back(r);
    const std::size_t m = sys.fiber_dim;
    Subcomplex face = make_subcomplex(total, std::set<std::size_t>(s.face.begin(), s.face.end()));
    PullbackPart p;
    p.name = s.name;
    p.base = cochain_complex(s.complex, sys);
    p.face = cochain_complex(face.complex, restrict_system(open, face));
    for (int q = 0; q <= total.dimension(); ++q) {
      QMatrix res(face.complex.count(q) * n, total.count(q) * n);
      QMatrix cmp(face.complex.count(q) * n, s.complex.count(q) * m);
      for (std::size_t fc : face.complex.cells_of_dim(q)) {
        const std::size_t tc = face.to_parent[fc];
        const std::size_t row = face.complex.position(fc) * n;
        res.set_block(row, total.position(tc) * n, QMatrix::identity(n));
        const CellImage& im = s.fibration.at(tc);
        if (s.complex.cell(im.cell).dim == q) cmp.set_block(row, s.complex.position(im.cell) * m, Rational(im.sign) * r);
      }
      p.restrict_map.push_back(std::move(res));
      p.compare_map.push_back(std::move(cmp));
    }
    out.parts.push_back(std::move(p));
  }
  for (const auto& [deeper, shallower] : sp.order()) out.order.emplace_back(deeper - 1, shallower - 1);
  return out;
}

inline PullbackComplex compatibility_complex(const SpaceComplexes& sc) { return pullback_complex(sc.total, sc.parts); }

}  // namespace equires
