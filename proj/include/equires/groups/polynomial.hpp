#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "equires/core/matrix.hpp"
#include "equires/groups/rep_ring.hpp"

namespace equires {

using Monomial = std::vector<int>;

/// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m.at(i) = 1;
    p.add_term(m, 1);
    return p;
  }

  std::size_t num_vars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) fail(ErrorKind::invalid_argument, "monomial arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static int degree_of(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
  }

  Polynomial homogeneous_part(int j) const {
    Polynomial p(nvars_);
    for (const auto& [m, c] : terms_)
      if (degree_of(m) == j) p.terms_.emplace(m, c);
    return p;
  }

  Polynomial truncated(int max_degree) const {
    Polynomial p(nvars_);
    for (const auto& [m, c] : terms_)
      if (degree_of(m) <= max_degree) p.terms_.emplace(m, c);
    return p;
  }

  /// Substitutes x_i = sum_k sub(i, k) y_k; `sub` is nvars x new_nvars.
  Polynomial substitute(const QMatrix& sub) const {
    if (sub.rows() != nvars_) fail(ErrorKind::invalid_argument, "substitution arity mismatch");
    const std::size_t out_vars = sub.cols();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < nvars_; ++i) {
      Polynomial y(out_vars);
      for (std::size_t k = 0; k < out_vars; ++k) {
        Monomial m(out_vars, 0);
        m[k] = 1;
        y.add_term(m, sub(i, k));
      }
      images.push_back(std::move(y));
    }
    Polynomial out(out_vars);
    for (const auto& [m, c] : terms_) {
      Polynomial t = constant(out_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) t = t * images[i];
      out = out + t;
    }
    return out;
  }

  /// Places this polynomial's variables at positions [offset, offset + nvars) of a larger ring.
  Polynomial embedded(std::size_t total_vars, std::size_t offset) const {
    Polynomial p(total_vars);
    for (const auto& [m, c] : terms_) {
      Monomial big(total_vars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) big[offset + i] = m[i];
      p.terms_.emplace(std::move(big), c);
    }
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::invalid_argument, "polynomial arity mismatch");
    Polynomial p(a);
    for (const auto& [m, c] : b.terms_) p.add_term(m, c);
    return p;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (Rational(-1) * b); }

  friend Polynomial operator*(const Rational& k, const Polynomial& a) {
    Polynomial p(a.nvars_);
    if (k == 0) return p;
    for (const auto& [m, c] : a.terms_) p.terms_.emplace(m, k * c);
    return p;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::invalid_argument, "polynomial arity mismatch");
    Polynomial p(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(ma);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        p.add_term(m, ca * cb);
      }
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Terms in increasing degree; variables are x (one variable) or x1, x2, ...
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      int da = degree_of(a.first), db = degree_of(b.first);
      if (da != db) return da < db;
      return a.first > b.first;
    });
    std::string s;
    bool first = true;
    for (const auto& [m, c] : sorted) {
      const bool neg = c < 0;
      Rational a = neg ? Rational(-c) : c;
      if (!first) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += nvars_ == 1 ? "x" : "x" + std::to_string(i + 1);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) s += equires::to_string(a);
      else if (a == 1) s += mono;
      else s += equires::to_string(a) + "*" + mono;
      first = false;
    }
    return s;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// All monomials of total degree j in n variables, in descending lexicographic order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int j) {
  std::vector<Monomial> out;
  if (j < 0) return out;
  Monomial cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (n == 0) {
    if (j == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, j);
  return out;
}

// ---------------------------------------------------------------------------
// Invariant polynomials

/// Groups of coordinate substitutions acting on the Lie algebra of `g`; the
/// invariant polynomials are those fixed by every group in the list. Groups of
/// different product factors act on disjoint coordinate blocks and commute.
inline std::vector<std::vector<QMatrix>> coordinate_action_groups(const GroupDesc& g) {
  const std::size_t n = g.lie_dimension();
  std::vector<std::vector<QMatrix>> out;
  switch (g.kind()) {
    case GroupDesc::Kind::finite:
    case GroupDesc::Kind::torus: break;
    case GroupDesc::Kind::product: {
      std::size_t off = 0;
      for (const auto& f : g.factors()) {
        const std::size_t nf = f.lie_dimension();
        for (const auto& grp : coordinate_action_groups(f)) {
          std::vector<QMatrix> lifted;
          for (const auto& m : grp) {
            QMatrix big = QMatrix::identity(n);
            big.set_block(off, off, m);
            lifted.push_back(std::move(big));
          }
          out.push_back(std::move(lifted));
        }
        off += nf;
      }
      break;
    }
    case GroupDesc::Kind::extension: {
      const auto& e = g.extension_data();
      if (n == 0) break;
      std::vector<QMatrix> grp;
      for (std::size_t f = 0; f < e.quotient.order; ++f) grp.push_back(e.coordinate_action(f));
      out.push_back(std::move(grp));
      break;
    }
  }
  return out;
}

/// Explicit rational basis of the degree-j invariant polynomials S^j(g*)^G,
/// in reduced echelon form with respect to the monomial order.
class InvariantBasis {
 public:
  InvariantBasis(const GroupDesc& g, int degree) : group_(g), degree_(degree) {
    if (degree < 0) fail(ErrorKind::invalid_argument, "polynomial degree must be nonnegative");
    nvars_ = g.lie_dimension();
    monomials_ = monomials_of_degree(nvars_, degree);
    const auto groups = coordinate_action_groups(g);
    QMatrix rows(monomials_.size(), monomials_.size());
    for (std::size_t r = 0; r < monomials_.size(); ++r) {
      Polynomial p(nvars_);
      p.add_term(monomials_[r], 1);
      for (const auto& grp : groups) {
        Polynomial avg(nvars_);
        for (const auto& m : grp) avg = avg + p.substitute(m);
        p = Rational(1, static_cast<long>(grp.size())) * avg;
      }
      for (std::size_t c = 0; c < monomials_.size(); ++c) rows(r, c) = p.coefficient(monomials_[c]);
    }
    Echelon e = rref(rows);
    pivots_ = e.pivots;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      Polynomial b(nvars_);
      for (std::size_t c = 0; c < monomials_.size(); ++c) b.add_term(monomials_[c], e.reduced(i, c));
      basis_.push_back(std::move(b));
    }
  }

  const GroupDesc& group() const { return group_; }
  int degree() const { return degree_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Polynomial>& basis() const { return basis_; }

  /// Coordinates of a homogeneous invariant polynomial; throws if `p` is not in the span.
  QVector coordinates(const Polynomial& p) const {
    QVector x(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) x[i] = p.coefficient(monomials_[pivots_[i]]);
    if (!(polynomial(x) == p.homogeneous_part(degree_)) || !(p.homogeneous_part(degree_) == p))
      fail(ErrorKind::invalid_argument, "polynomial " + p.to_string() + " is not an invariant of degree " + std::to_string(degree_));
    return x;
  }

  Polynomial polynomial(const QVector& coords) const {
    if (coords.size() != basis_.size()) fail(ErrorKind::invalid_argument, "coordinate vector has wrong length");
    Polynomial p(nvars_);
    for (std::size_t i = 0; i < basis_.size(); ++i) p = p + coords[i] * basis_[i];
    return p;
  }

 private:
  GroupDesc group_;
  int degree_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Monomial> monomials_;
  std::vector<std::size_t> pivots_;
  std::vector<Polynomial> basis_;
};

inline InvariantBasis invariant_poly_basis(const GroupDesc& g, int degree) { return InvariantBasis(g, degree); }

/// Graded element of S(g*)^G truncated at max_degree, stored as coordinates in
/// the InvariantBasis of each degree.
class InvPoly {
 public:
  InvPoly(GroupDesc g, int max_degree) : group_(std::move(g)), max_degree_(max_degree) {
    if (max_degree < 0) fail(ErrorKind::invalid_argument, "degree D must be nonnegative");
    for (int j = 0; j <= max_degree; ++j) components_.emplace_back(InvariantBasis(group_, j).size(), Rational(0));
  }

  static InvPoly from_polynomial(const GroupDesc& g, const Polynomial& p, int max_degree) {
    InvPoly out(g, max_degree);
    if (p.num_vars() != g.lie_dimension()) fail(ErrorKind::invalid_argument, "polynomial arity does not match the Lie algebra");
    for (int j = 0; j <= max_degree; ++j) out.components_[j] = InvariantBasis(g, j).coordinates(p.homogeneous_part(j));
    return out;
  }

  const GroupDesc& group() const { return group_; }
  int max_degree() const { return max_degree_; }
  const QVector& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }
  void set_component(int j, QVector v) {
    if (v.size() != components_.at(static_cast<std::size_t>(j)).size()) fail(ErrorKind::invalid_argument, "component length mismatch");
    components_[static_cast<std::size_t>(j)] = std::move(v);
  }

  Polynomial to_polynomial() const {
    Polynomial p(group_.lie_dimension());
    for (int j = 0; j <= max_degree_; ++j) p = p + InvariantBasis(group_, j).polynomial(components_[static_cast<std::size_t>(j)]);
    return p;
  }

  std::string to_string() const { return to_polynomial().to_string(); }

  friend InvPoly operator+(const InvPoly& a, const InvPoly& b) {
    require_same_group(a.group_, b.group_);
    const int d = std::min(a.max_degree_, b.max_degree_);
    return from_polynomial(a.group_, a.to_polynomial() + b.to_polynomial(), d);
  }

  friend InvPoly operator*(const InvPoly& a, const InvPoly& b) {
    require_same_group(a.group_, b.group_);
    const int d = std::min(a.max_degree_, b.max_degree_);
    return from_polynomial(a.group_, (a.to_polynomial() * b.to_polynomial()).truncated(d), d);
  }

  friend bool operator==(const InvPoly& a, const InvPoly& b) {
    return a.group_ == b.group_ && a.max_degree_ == b.max_degree_ && a.components_ == b.components_;
  }

 private:
  GroupDesc group_;
  int max_degree_ = 0;
  std::vector<QVector> components_;
};

// ---------------------------------------------------------------------------
// Localization at the identity

/// Taylor expansion at the identity of the character of an irreducible, as a
/// polynomial in Lie algebra coordinates. The coordinate is scaled so that a
/// circle weight n expands as sum_j n^j x^j / j!.
inline Polynomial character_series(const GroupDesc& g, const IrredLabel& l, int max_degree) {
  const std::size_t n = g.lie_dimension();
  switch (g.kind()) {
    case GroupDesc::Kind::finite: return Polynomial::constant(0, Rational(label_dimension(g, l)));
    case GroupDesc::Kind::torus: {
      Polynomial lin(n);
      for (std::size_t i = 0; i < n; ++i) {
        Monomial m(n, 0);
        m[i] = 1;
        lin.add_term(m, l.v[i]);
      }
      Polynomial term = Polynomial::constant(n, 1);
      Polynomial sum = term;
      for (int j = 1; j <= max_degree; ++j) {
        term = Rational(1, j) * (term * lin);
        sum = sum + term;
      }
      return sum;
    }
    case GroupDesc::Kind::product: {
      auto parts = split_label(g, l);
      Polynomial acc = Polynomial::constant(n, 1);
      std::size_t off = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const GroupDesc& f = g.factors()[i];
        acc = (acc * character_series(f, parts[i], max_degree).embedded(n, off)).truncated(max_degree);
        off += f.lie_dimension();
      }
      return acc;
    }
    case GroupDesc::Kind::extension: {
      // only the identity component contributes: restrict to the normal part
      auto traces = detail::twisted_traces(RepRingElem::irreducible(g, l));
      const auto& e = g.extension_data();
      Polynomial sum(n);
      for (const auto& [m, c] : traces[e.quotient.identity]) sum = sum + c * character_series(e.normal, m, max_degree);
      return sum;
    }
  }
  return Polynomial(n);
}

inline Polynomial character_series(const RepRingElem& e, int max_degree) {
  Polynomial p(e.group().lie_dimension());
  for (const auto& [l, c] : e.terms()) p = p + Rational(c) * character_series(e.group(), l, max_degree);
  return p.truncated(max_degree);
}

/// The localization map L: R(K) -> S(k*)^K, truncated at total degree D.
inline InvPoly localize_char(const GroupDesc& k, const RepRingElem& e, int max_degree) {
  if (max_degree < 0) fail(ErrorKind::invalid_argument, "degree D must be nonnegative");
  require_same_group(k, e.group());
  return InvPoly::from_polynomial(k, character_series(e, max_degree), max_degree);
}

}  // namespace equires
