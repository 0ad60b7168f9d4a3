#pragma once

#include <string>
#include <vector>

#include "equires/theories/k_theory.hpp"

namespace equires {

/// Fiberwise localization L_j: windowed R(K) -> S^j(k*)^K, the degree-j part
/// of the character expanded at the identity.
inline QMatrix localization_matrix(const LocalSystem& rep, int j) {
  if (rep.kind != FiberKind::rep) fail(ErrorKind::invalid_argument, "localization starts from a representation system");
  InvariantBasis basis(rep.group, j);
  QMatrix m(basis.size(), rep.fiber_dim);
  for (std::size_t c = 0; c < rep.fiber_dim; ++c) {
    QVector v = basis.coordinates(character_series(rep.group, rep.labels[c], j).homogeneous_part(j));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
  }
  return m;
}

/// Localization of one cochain degree, block by block over the ambient sum.
inline QMatrix ambient_localization(const SpaceComplexes& rep, const PullbackComplex& rep_pc, const SpaceComplexes& borel,
                                    const PullbackComplex& borel_pc, std::size_t q, int j) {
  const int qi = static_cast<int>(q);
  QMatrix m(borel_pc.ambient_dims.at(q), rep_pc.ambient_dims.at(q));
  for (std::size_t i = 0; i < rep.systems.size(); ++i) {
    QMatrix l = localization_matrix(rep.systems[i], j);
    const std::size_t n = rep.systems[i].fiber_dim, b = borel.systems[i].fiber_dim;
    for (std::size_t p = 0; p < rep.systems[i].base.count(qi); ++p)
      m.set_block(borel_pc.offsets[q][i] + p * b, rep_pc.offsets[q][i] + p * n, l);
  }
  return m;
}

struct LocalizedClass {
  int max_degree = 0;                ///< H_G degree D; components j = 0..D/2
  std::vector<QVector> ambient;      ///< [j] ambient Borel-j cochain
  std::vector<QVector> coordinates;  ///< [j] class in the basis of H^q representatives of the Borel-j complex
};

/// The localization map on a degree-q cocycle of the delocalized complex,
/// given as an ambient cochain. Output components are cocycles of the Borel
/// complexes (checked).
inline LocalizedClass localization_map(const ResolutionSpace& sp, long window, std::size_t q, const QVector& dl_ambient, int max_degree) {
  if (max_degree < 0) fail(ErrorKind::invalid_argument, "degree D must be nonnegative");
  SpaceComplexes rep = space_complexes(sp, CoefficientSpec::rep(window));
  PullbackComplex rep_pc = compatibility_complex(rep);
  QVector x = pullback_coordinates(rep_pc, q, dl_ambient);
  const int qi = static_cast<int>(q);
  for (const auto& v : rep_pc.complex.d(qi) * x)
    if (v != 0) fail(ErrorKind::not_cocycle, "delocalized cochain is not closed in degree " + std::to_string(q));
  LocalizedClass out;
  out.max_degree = max_degree;
  for (int j = 0; 2 * j <= max_degree; ++j) {
    SpaceComplexes borel = space_complexes(sp, CoefficientSpec::borel(j));
    PullbackComplex borel_pc = compatibility_complex(borel);
    QVector y = ambient_localization(rep, rep_pc, borel, borel_pc, q, j) * dl_ambient;
    QVector coords;
    try {
      coords = pullback_coordinates(borel_pc, q, y);
    } catch (const Error&) {
      fail(ErrorKind::not_chain_map, "localization leaves the Borel compatibility complex in degree " + std::to_string(q));
    }
    out.coordinates.push_back(class_coordinates(borel_pc.complex, cohomology_basis(borel_pc.complex, qi), qi, coords));
    out.ambient.push_back(std::move(y));
  }
  return out;
}

/// Matrix of L on H^q, one block per Borel degree j, with the check that
/// coboundaries go to coboundaries.
struct LocalizationOnCohomology {
  std::size_t source_dim = 0;
  std::vector<QMatrix> blocks;  ///< [j]: H^q_G(Borel j) x H^q_dl
  std::vector<std::size_t> ranks;
};

inline LocalizationOnCohomology localization_on_cohomology(const ResolutionSpace& sp, long window, std::size_t q, int max_degree) {
  SpaceComplexes rep = space_complexes(sp, CoefficientSpec::rep(window));
  PullbackComplex rep_pc = compatibility_complex(rep);
  const int qi = static_cast<int>(q);
  CohomologyBasis basis = cohomology_basis(rep_pc.complex, qi);
  LocalizationOnCohomology out;
  out.source_dim = basis.representatives.cols();
  std::vector<LocalizedClass> images;
  for (std::size_t c = 0; c < basis.representatives.cols(); ++c)
    images.push_back(localization_map(sp, window, q, rep_pc.embedding[q] * basis.representatives.column(c), max_degree));
  for (std::size_t c = 0; c < basis.coboundaries.cols(); ++c) {
    LocalizedClass b = localization_map(sp, window, q, rep_pc.embedding[q] * basis.coboundaries.column(c), max_degree);
    for (const auto& v : b.coordinates)
      for (const auto& x : v)
        if (x != 0) fail(ErrorKind::not_chain_map, "localization sends a coboundary to a nonzero class");
  }
  for (int j = 0; 2 * j <= max_degree; ++j) {
    const std::size_t rows = images.empty() ? 0 : images.front().coordinates[static_cast<std::size_t>(j)].size();
    QMatrix m(rows, images.size());
    for (std::size_t c = 0; c < images.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = images[c].coordinates[static_cast<std::size_t>(j)][r];
    out.ranks.push_back(rank(m));
    out.blocks.push_back(std::move(m));
  }
  return out;
}

/// Borel-j ambient cochain of a K-class localized value by value with
/// localize_char, independently of the fiber matrices.
inline QVector localized_k_class(const SpaceComplexes& borel, const PullbackComplex& borel_pc, const KClass& k, int j) {
  QVector v(borel_pc.ambient_dims.at(0));
  for (std::size_t i = 0; i < borel.systems.size(); ++i) {
    const LocalSystem& sys = borel.systems[i];
    for (std::size_t p = 0; p < k.values.at(i).size(); ++p) {
      const RepRingElem& e = k.values[i][p];
      if (e.is_zero()) continue;
      InvPoly loc = localize_char(sys.group, e, j);
      const QVector& c = loc.component(j);
      for (std::size_t a = 0; a < c.size(); ++a) v[borel_pc.offsets[0][i] + p * sys.fiber_dim + a] = c[a];
    }
  }
  return v;
}

struct TriangleReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// Checks L(Ch_G(k)) against the value-by-value localization of k on every
/// generator of K^0 within the window (and on the zero class).
inline TriangleReport chern_triangle_check(const ResolutionSpace& sp, int max_degree, long window) {
  KTheory kt = k_theory(sp, window);
  std::vector<KClass> classes = kt.generators;
  KClass zero;
  if (!classes.empty()) {
    zero = classes.front();
    for (auto& s : zero.values)
      for (auto& v : s) v = RepRingElem(v.group());
    classes.push_back(zero);
  }
  TriangleReport report;
  std::vector<SpaceComplexes> borel;
  std::vector<PullbackComplex> borel_pc;
  for (int j = 0; 2 * j <= max_degree; ++j) {
    borel.push_back(space_complexes(sp, CoefficientSpec::borel(j)));
    borel_pc.push_back(compatibility_complex(borel.back()));
  }
  for (std::size_t g = 0; g < classes.size(); ++g) {
    ++report.checked;
    const std::string which = g < kt.generators.size() ? "generator " + std::to_string(g) : std::string("zero class");
    try {
      ChernImage ch = chern_character(sp, classes[g], window);
      LocalizedClass via_dl = localization_map(sp, window, 0, ch.ambient, max_degree);
      for (std::size_t j = 0; j < borel.size(); ++j) {
        QVector direct = localized_k_class(borel[j], borel_pc[j], classes[g], static_cast<int>(j));
        if (!(direct == via_dl.ambient[j])) {
          report.passed = false;
          report.failures.push_back(which + ": legs differ in Borel degree " + std::to_string(j));
        }
      }
    } catch (const Error& e) {
      report.passed = false;
      report.failures.push_back(which + ": " + e.what());
    }
  }
  return report;
}

struct FixedPointDatum {
  Polynomial value;  ///< restriction of the class to the fixed point, in one variable x
  long weight = 0;
};

/// sum_p f_p / (w_p x) for isolated circle fixed points. The result must be a
/// polynomial; a surviving x^-1 term is a localization obstruction. The output
/// is truncated at H_G degree D (x has degree 2).
inline Polynomial ab_pushforward(const std::vector<FixedPointDatum>& data, int max_degree) {
  if (max_degree < 0) fail(ErrorKind::invalid_argument, "degree D must be nonnegative");
  Polynomial out(1);
  Rational residue = 0;
  for (std::size_t p = 0; p < data.size(); ++p) {
    const FixedPointDatum& d = data[p];
    if (d.weight == 0) fail(ErrorKind::invalid_argument, "fixed point " + std::to_string(p) + " has weight 0");
    if (d.value.num_vars() != 1) fail(ErrorKind::invalid_argument, "fixed point " + std::to_string(p) + " value must be a polynomial in one variable");
    for (const auto& [m, c] : d.value.terms()) {
      Rational t = c / Rational(d.weight);
      if (m[0] == 0)
        residue += t;
      else
        out.add_term(Monomial{m[0] - 1}, t);
    }
  }
  if (residue != 0) fail(ErrorKind::localization_obstruction, "localization obstruction: residue " + to_string(residue) + " at x^-1");
  return out.truncated(max_degree / 2);
}

struct PushforwardRow {
  int degree = 0;  ///< H_G degree of the input class
  std::vector<Polynomial> values;
  Polynomial result;
};

/// Push-forward of a basis of the degree-0 cochain part of H_G^{2j}, j <= D/2,
/// on a space whose singular strata are isolated circle fixed points.
inline std::vector<PushforwardRow> fixed_point_pushforward(const ResolutionSpace& sp, int max_degree) {
  if (sp.strata.size() < 2) fail(ErrorKind::out_of_scope, "push-forward needs isolated fixed points");
  for (std::size_t i = 1; i < sp.strata.size(); ++i) {
    const Stratum& s = sp.strata[i];
    if (!s.fixed_point_weight || s.complex.size() != 1 || s.group.lie_dimension() != 1)
      fail(ErrorKind::out_of_scope, "push-forward needs every singular stratum to be an isolated circle fixed point (stratum " + s.name + ")");
  }
  require_valid(sp);
  std::vector<PushforwardRow> rows;
  for (int j = 0; 2 * j <= max_degree; ++j) {
    SpaceComplexes sc = space_complexes(sp, CoefficientSpec::borel(j));
    PullbackComplex pc = compatibility_complex(sc);
    CohomologyBasis b = cohomology_basis(pc.complex, 0);
    for (std::size_t c = 0; c < b.representatives.cols(); ++c) {
      QVector v = pc.embedding[0] * b.representatives.column(c);
      PushforwardRow row;
      row.degree = 2 * j;
      std::vector<FixedPointDatum> data;
      for (std::size_t i = 1; i < sp.strata.size(); ++i) {
        const std::size_t off = pc.offsets[0][i];
        QVector coords(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + sc.systems[i].fiber_dim));
        Polynomial f = InvariantBasis(sp.strata[i].group, j).polynomial(coords);
        row.values.push_back(f);
        data.push_back({f, *sp.strata[i].fixed_point_weight});
      }
      row.result = ab_pushforward(data, max_degree);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace equires
