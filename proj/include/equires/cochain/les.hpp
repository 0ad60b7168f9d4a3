#pragma once

#include <string>
#include <vector>

#include "equires/cochain/pullback.hpp"

namespace equires {

struct LesReport {
  bool exact = true;
  std::vector<std::string> failures;
  std::vector<std::size_t> connecting_ranks;  ///< rank of delta: H^q(quotient) -> H^{q+1}(sub)
};

namespace detail {

/// Matrix of a chain map on cohomology, in the bases of representatives.
inline QMatrix induced_map(const Complex& from, const Complex& to, const QMatrix& f, int q) {
  CohomologyBasis bf = cohomology_basis(from, q), bt = cohomology_basis(to, q);
  QMatrix m(bt.representatives.cols(), bf.representatives.cols());
  for (std::size_t c = 0; c < bf.representatives.cols(); ++c) {
    QVector v = class_coordinates(to, bt, q, f * bf.representatives.column(c));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
  }
  return m;
}

}  // namespace detail

/// Verifies 0 -> sub -f-> full -g-> quotient -> 0 is short exact, builds the
/// connecting maps and checks exactness of the long sequence in cohomology.
inline LesReport les_check(const Complex& sub, const Complex& full, const Complex& quotient, const std::vector<QMatrix>& f,
                           const std::vector<QMatrix>& g) {
  const std::size_t length = std::max({sub.length(), full.length(), quotient.length()});
  detail::check_chain_map(sub, full, f, length, "f");
  detail::check_chain_map(full, quotient, g, length, "g");
  for (std::size_t q = 0; q < length; ++q) {
    const int qi = static_cast<int>(q);
    QMatrix fq = detail::map_at(f, q, full.dim(qi), sub.dim(qi));
    QMatrix gq = detail::map_at(g, q, quotient.dim(qi), full.dim(qi));
    const std::string at = " in degree " + std::to_string(q);
    if (rank(fq) != sub.dim(qi)) fail(ErrorKind::not_short_exact, "not a short exact sequence: f is not injective" + at);
    if (rank(gq) != quotient.dim(qi)) fail(ErrorKind::not_short_exact, "not a short exact sequence: g is not surjective" + at);
    if (!(gq * fq).is_zero()) fail(ErrorKind::not_short_exact, "not a short exact sequence: g f != 0" + at);
    if (full.dim(qi) != sub.dim(qi) + quotient.dim(qi))
      fail(ErrorKind::not_short_exact, "not a short exact sequence: image of f is not the kernel of g" + at);
  }

  LesReport report;
  // sequence objects: H^q(sub), H^q(full), H^q(quotient) for q = 0..length-1,
  // with maps f*, g*, delta between them
  struct Step {
    QMatrix map;  // from object i to object i+1
    std::string name;
  };
  std::vector<std::size_t> object_dims;
  std::vector<Step> steps;
  for (std::size_t q = 0; q < length; ++q) {
    const int qi = static_cast<int>(q);
    QMatrix fq = detail::map_at(f, q, full.dim(qi), sub.dim(qi));
    QMatrix gq = detail::map_at(g, q, quotient.dim(qi), full.dim(qi));
    CohomologyBasis bs = cohomology_basis(sub, qi), bfull = cohomology_basis(full, qi), bq = cohomology_basis(quotient, qi);
    object_dims.push_back(bs.representatives.cols());
    object_dims.push_back(bfull.representatives.cols());
    object_dims.push_back(bq.representatives.cols());
    steps.push_back({detail::induced_map(sub, full, fq, qi), "f* in degree " + std::to_string(q)});
    steps.push_back({detail::induced_map(full, quotient, gq, qi), "g* in degree " + std::to_string(q)});
    // delta: lift z along g, apply d, pull back along f
    CohomologyBasis bs1 = cohomology_basis(sub, qi + 1);
    QMatrix fq1 = detail::map_at(f, q + 1, full.dim(qi + 1), sub.dim(qi + 1));
    QMatrix delta(bs1.representatives.cols(), bq.representatives.cols());
    for (std::size_t c = 0; c < bq.representatives.cols(); ++c) {
      auto y = solve(gq, bq.representatives.column(c));
      if (!y) fail(ErrorKind::not_short_exact, "not a short exact sequence: lift failed in degree " + std::to_string(q));
      QVector dy = full.d(qi) * *y;
      auto x = solve(fq1, dy);
      if (!x) fail(ErrorKind::not_short_exact, "not a short exact sequence: d of a lift leaves the image of f");
      QVector v = class_coordinates(sub, bs1, qi + 1, *x);
      for (std::size_t r = 0; r < v.size(); ++r) delta(r, c) = v[r];
    }
    report.connecting_ranks.push_back(rank(delta));
    steps.push_back({delta, "delta from degree " + std::to_string(q)});
  }
  // exactness at each interior object: composite zero and rank(in) + rank(out) = dim
  for (std::size_t i = 0; i < object_dims.size(); ++i) {
    const std::size_t in_rank = i ? rank(steps[i - 1].map) : 0;
    const std::size_t out_rank = i < steps.size() ? rank(steps[i].map) : 0;
    if (i && i < steps.size() && steps[i].map.cols() && steps[i - 1].map.cols() && !(steps[i].map * steps[i - 1].map).is_zero()) {
      report.exact = false;
      report.failures.push_back("composite " + steps[i].name + " after " + steps[i - 1].name + " is nonzero");
    }
    if (in_rank + out_rank != object_dims[i]) {
      report.exact = false;
      report.failures.push_back("not exact between " + (i ? steps[i - 1].name : std::string("0")) + " and " +
                                (i < steps.size() ? steps[i].name : std::string("0")));
    }
  }
  return report;
}

/// The short exact sequence of relative complexes for B subset B + {k}:
/// sub = C(B + {k}), full = C(B), quotient = image of the projection to part k.
struct RelativeTriple {
  PullbackComplex sub;
  PullbackComplex full;
  Complex quotient;
  std::vector<QMatrix> f;
  std::vector<QMatrix> g;
};

inline RelativeTriple relative_triple(const Complex& total, const std::vector<PullbackPart>& parts, const std::set<std::size_t>& b,
                                      std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  if (b.count(k)) fail(ErrorKind::invalid_argument, "part already in the relative set");
  std::set<std::size_t> bk = b;
  bk.insert(k);
  RelativeTriple t{relative_complex(total, parts, bk, order), relative_complex(total, parts, b, order), Complex(), {}, {}};
  const std::size_t length = t.full.complex.length();
  std::vector<QMatrix> images;
  for (std::size_t q = 0; q < length; ++q) {
    auto x = solve(t.full.embedding[q], t.sub.embedding[q]);
    if (!x) fail(ErrorKind::invalid_argument, "relative complexes are not nested");
    t.f.push_back(std::move(*x));
    const std::size_t off = t.full.offsets[q][k + 1];
    const std::size_t n = parts[k].base.dim(static_cast<int>(q));
    QMatrix proj = t.full.embedding[q].block(off, 0, n, t.full.embedding[q].cols());
    images.push_back(image_basis(proj));
    auto gq = solve(images.back(), proj);
    t.g.push_back(std::move(*gq));
  }
  std::vector<std::size_t> dims;
  std::vector<QMatrix> d;
  for (std::size_t q = 0; q < length; ++q) {
    dims.push_back(images[q].cols());
    if (q + 1 == length) break;
    auto x = solve(images[q + 1], parts[k].base.d(static_cast<int>(q)) * images[q]);
    if (!x) fail(ErrorKind::not_chain_map, "projection image is not a subcomplex in degree " + std::to_string(q));
    d.push_back(std::move(*x));
  }
  t.quotient = Complex::make(std::move(dims), std::move(d));
  return t;
}

}  // namespace equires
