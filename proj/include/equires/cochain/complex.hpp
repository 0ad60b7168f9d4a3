#pragma once

#include <string>
#include <vector>

#include "equires/core/matrix.hpp"
#include "equires/resolution/local_system.hpp"

namespace equires {

/// Finite cochain complex C^0 -> C^1 -> ... of Q-vector spaces.
/// d[q] is the dim C^{q+1} x dim C^q matrix of the differential.
class Complex {
 public:
  Complex() = default;

  static Complex make(std::vector<std::size_t> dims, std::vector<QMatrix> d) {
    if (dims.empty() ? !d.empty() : d.size() != dims.size() - 1)
      fail(ErrorKind::invalid_argument, "complex needs one differential between consecutive degrees");
    for (std::size_t q = 0; q < d.size(); ++q)
      if (d[q].rows() != dims[q + 1] || d[q].cols() != dims[q])
        fail(ErrorKind::invalid_argument, "differential d^" + std::to_string(q) + " has the wrong shape");
    for (std::size_t q = 0; q + 1 < d.size(); ++q)
      if (!(d[q + 1] * d[q]).is_zero())
        fail(ErrorKind::invalid_argument, "d^" + std::to_string(q + 1) + " d^" + std::to_string(q) + " != 0");
    Complex c;
    c.dims_ = std::move(dims);
    c.d_ = std::move(d);
    return c;
  }

  /// Number of degrees carried (top degree + 1).
  std::size_t length() const { return dims_.size(); }
  std::size_t dim(int q) const {
    return q < 0 || static_cast<std::size_t>(q) >= dims_.size() ? 0 : dims_[static_cast<std::size_t>(q)];
  }
  /// d^q : C^q -> C^{q+1}, a zero matrix of the right shape outside the stored range.
  QMatrix d(int q) const {
    if (q >= 0 && static_cast<std::size_t>(q) < d_.size()) return d_[static_cast<std::size_t>(q)];
    return QMatrix(dim(q + 1), dim(q));
  }

  /// Copy padded with zero spaces up to `length` degrees.
  Complex padded(std::size_t length) const {
    if (length <= dims_.size()) return *this;
    std::vector<std::size_t> dims = dims_;
    dims.resize(length, 0);
    std::vector<QMatrix> d;
    for (std::size_t q = 0; q + 1 < length; ++q) d.push_back(q < d_.size() ? d_[q] : QMatrix(dims[q + 1], dims[q]));
    return make(std::move(dims), std::move(d));
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<QMatrix> d_;
};

/// Cohomology dimensions per degree; integer computations also carry the
/// torsion invariant factors (each divides the next) per degree.
struct GradedCohomology {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Integer>> torsion;

  std::size_t dim(int q) const {
    return q < 0 || static_cast<std::size_t>(q) >= dims.size() ? 0 : dims[static_cast<std::size_t>(q)];
  }
  std::size_t even() const {
    std::size_t s = 0;
    for (std::size_t q = 0; q < dims.size(); q += 2) s += dims[q];
    return s;
  }
  std::size_t odd() const {
    std::size_t s = 0;
    for (std::size_t q = 1; q < dims.size(); q += 2) s += dims[q];
    return s;
  }
  int euler_characteristic() const { return static_cast<int>(even()) - static_cast<int>(odd()); }
};

inline GradedCohomology cohomology(const Complex& x) {
  GradedCohomology h;
  std::vector<std::size_t> ranks(x.length() + 1, 0);
  for (std::size_t q = 0; q < x.length(); ++q) ranks[q] = rank(x.d(static_cast<int>(q)));
  for (std::size_t q = 0; q < x.length(); ++q)
    h.dims.push_back(x.dim(static_cast<int>(q)) - ranks[q] - (q ? ranks[q - 1] : 0));
  return h;
}

/// Integral cohomology of a complex whose differentials are integer matrices:
/// free ranks and torsion from Smith normal forms.
inline GradedCohomology integer_cohomology(const Complex& x) {
  GradedCohomology h;
  std::vector<SmithForm> snf;
  for (std::size_t q = 0; q < x.length(); ++q) snf.push_back(smith_normal_form(to_integer(x.d(static_cast<int>(q)))));
  for (std::size_t q = 0; q < x.length(); ++q) {
    h.dims.push_back(x.dim(static_cast<int>(q)) - snf[q].rank() - (q ? snf[q - 1].rank() : 0));
    h.torsion.push_back(q ? snf[q - 1].torsion() : std::vector<Integer>{});
  }
  return h;
}

/// Cocycles, coboundaries and a set of cocycles whose classes form a basis of H^q.
struct CohomologyBasis {
  QMatrix cocycles;
  QMatrix coboundaries;
  QMatrix representatives;
};

inline CohomologyBasis cohomology_basis(const Complex& x, int q) {
  CohomologyBasis b;
  b.cocycles = kernel(x.d(q));
  b.coboundaries = image_basis(x.d(q - 1));
  b.representatives = extend_basis(b.coboundaries, b.cocycles);
  return b;
}

/// Coordinates of the class of cocycle z in the basis of representatives.
inline QVector class_coordinates(const Complex& x, const CohomologyBasis& b, int q, const QVector& z) {
  if (z.size() != x.dim(q)) fail(ErrorKind::invalid_argument, "cochain has the wrong length in degree " + std::to_string(q));
  QVector dz = x.d(q) * z;
  for (const auto& v : dz)
    if (v != 0) fail(ErrorKind::not_cocycle, "not a cocycle in degree " + std::to_string(q));
  QMatrix both = hstack<Rational>({b.coboundaries, b.representatives}, x.dim(q));
  auto c = solve(both, z);
  if (!c) fail(ErrorKind::not_cocycle, "cocycle is not in the span of the cohomology basis");
  return QVector(c->begin() + static_cast<std::ptrdiff_t>(b.coboundaries.cols()), c->end());
}

/// Local-coefficient cellular cochains: C^q = sum over q-cells of the fiber,
/// (du)(sigma) = sum over entries [sigma : tau] T_{tau -> sigma} u(tau).
inline Complex cochain_complex(const CellComplex& c, const LocalSystem& l) {
  if (!(l.base == c)) fail(ErrorKind::invalid_argument, "local system lives on a different complex");
  const std::size_t n = l.fiber_dim;
  const int top = c.dimension();
  std::vector<std::size_t> dims;
  std::vector<QMatrix> d;
  for (int q = 0; q <= top; ++q) dims.push_back(c.count(q) * n);
  for (int q = 0; q < top; ++q) {
    QMatrix m(dims[static_cast<std::size_t>(q) + 1], dims[static_cast<std::size_t>(q)]);
    for (std::size_t sigma : c.cells_of_dim(q + 1)) {
      const Cell& cell = c.cell(sigma);
      const std::size_t r0 = c.position(sigma) * n;
      for (std::size_t e = 0; e < cell.boundary.size(); ++e) {
        const Incidence& inc = cell.boundary[e];
        const std::size_t c0 = c.position(inc.face) * n;
        const QMatrix& t = l.transport.at(sigma).at(e);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (t(i, j) != 0) m(r0 + i, c0 + j) += Rational(inc.coeff) * t(i, j);
      }
    }
    d.push_back(std::move(m));
  }
  for (std::size_t q = 0; q + 1 < d.size(); ++q) {
    QMatrix sq = d[q + 1] * d[q];
    for (std::size_t r = 0; r < sq.rows(); ++r)
      for (std::size_t k = 0; k < sq.cols(); ++k)
        if (sq(r, k) != 0)
          fail(ErrorKind::non_flat, "non-flat system: d^2 != 0 on cell " + std::to_string(c.cells_of_dim(static_cast<int>(q) + 2)[r / n]));
  }
  if (dims.empty()) return Complex();
  return Complex::make(std::move(dims), std::move(d));
}

}  // namespace equires
