#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "equires/core/error.hpp"
#include "equires/core/rational.hpp"

namespace equires {

/// Dense row-major matrix over an exact scalar type (Integer or Rational).
template <typename T>
class Matrix {
 public:
  using Scalar = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorKind::invalid_argument, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) fail(ErrorKind::invalid_argument, "column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  static Matrix column_vector(const std::vector<T>& v) { return from_columns(v.size(), {v}); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < idx.size(); ++k) m(r, k) = (*this)(r, idx[k]);
    return m;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t c = 0; c < cols_; ++c) m(k, c) = (*this)(idx[k], c);
    return m;
  }

  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) (*this)(r0 + r, c0 + c) = block(r, c);
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix m(a);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix m(a);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
    return m;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix m(a);
    for (auto& v : m.data_) v = -v;
    return m;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m(a);
    for (auto& v : m.data_) v *= s;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::invalid_argument, "matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (bkj != 0) m(i, j) += aik * bkj;
        }
      }
    return m;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) fail(ErrorKind::invalid_argument, "matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) fail(ErrorKind::invalid_argument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;
using QVector = std::vector<Rational>;

inline QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q(r, c) = Rational(m(r, c));
  return q;
}

/// Exact conversion; throws if an entry is not integral.
inline ZMatrix to_integer(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1) fail(ErrorKind::non_integral, "matrix entry is not an integer");
      z(r, c) = m(r, c).get_num();
    }
  return z;
}

template <typename T>
Matrix<T> vstack(const std::vector<Matrix<T>>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.rows() && b.cols() != cols) fail(ErrorKind::invalid_argument, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix<T> m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    if (b.rows()) m.set_block(r0, 0, b);
    r0 += b.rows();
  }
  return m;
}

template <typename T>
Matrix<T> hstack(const std::vector<Matrix<T>>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.cols() && b.rows() != rows) fail(ErrorKind::invalid_argument, "hstack row mismatch");
    cols += b.cols();
  }
  Matrix<T> m(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    if (b.cols()) m.set_block(0, c0, b);
    c0 += b.cols();
  }
  return m;
}

template <typename T>
Matrix<T> block_diagonal(const std::vector<Matrix<T>>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<T> m(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination.

/// Rank by Bareiss elimination over the integers. Pivots are taken in fixed
/// column order, first usable row, so the elimination is reproducible.
inline std::size_t rank(ZMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r)
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(r, k));
    const Integer pivot = a(r, c);
    for (std::size_t i = r + 1; i < m; ++i) {
      const Integer lead = a(i, c);
      for (std::size_t k = c; k < n; ++k) {
        Integer v = pivot * a(i, k) - lead * a(r, k);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, k) = v;
      }
    }
    prev = pivot;
    ++r;
  }
  return r;
}

/// Rational rank: rows are cleared of denominators, then eliminated fraction-free.
inline std::size_t rank(const QMatrix& q) {
  ZMatrix a(q.rows(), q.cols());
  for (std::size_t r = 0; r < q.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < q.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < q.cols(); ++c) {
      Rational v = q(r, c) * l;
      a(r, c) = v.get_num();
    }
  }
  return rank(std::move(a));
}

// ---------------------------------------------------------------------------
// Rational echelon forms.

struct Echelon {
  QMatrix reduced;                  ///< reduced row echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

inline Echelon rref(QMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r)
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(r, k));
    const Rational inv = 1 / a(r, c);
    for (std::size_t k = c; k < n; ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t k = c; k < n; ++k)
        if (a(r, k) != 0) a(i, k) -= f * a(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

/// Basis of the right kernel as the columns of an n x (n - rank) matrix.
/// Column k has a 1 in the k-th free position and zeros at the other free positions.
inline QMatrix kernel(const QMatrix& a) {
  const std::size_t n = a.cols();
  Echelon e = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  QMatrix k(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) k(e.pivots[i], j) = -e.reduced(i, free[j]);
  }
  return k;
}

/// Linearly independent columns of `a` spanning its column space (pivot columns).
inline QMatrix image_basis(const QMatrix& a) {
  Echelon e = rref(a);
  return a.select_columns(e.pivots);
}

/// Solves a * x = b exactly; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) fail(ErrorKind::invalid_argument, "solve: row mismatch");
  const std::size_t n = a.cols();
  QMatrix aug = hstack<Rational>({a, b}, a.rows());
  Echelon e = rref(aug);
  QMatrix x(n, b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, n + j);
  }
  return x;
}

inline std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  auto x = solve(a, QMatrix::column_vector(b));
  if (!x) return std::nullopt;
  return x->column(0);
}

/// Columns of `space` that extend the columns of `sub` to a basis of span(sub, space).
/// Returns the selected columns of `space` only.
inline QMatrix extend_basis(const QMatrix& sub, const QMatrix& space) {
  const std::size_t rows = sub.cols() ? sub.rows() : space.rows();
  QMatrix joined = hstack<Rational>({sub, space}, rows);
  Echelon e = rref(joined);
  std::vector<std::size_t> chosen;
  for (std::size_t p : e.pivots)
    if (p >= sub.cols()) chosen.push_back(p - sub.cols());
  return space.select_columns(chosen);
}

// ---------------------------------------------------------------------------
// Integer normal forms.

/// Lattice basis (columns) of the integer kernel {x in Z^n : a x = 0}, computed by
/// unimodular column reduction.
inline ZMatrix integer_kernel(ZMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  ZMatrix v = ZMatrix::identity(n);
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
  };
  auto axpy_col = [&](std::size_t dst, const Integer& q, std::size_t src) {
    for (std::size_t r = 0; r < m; ++r) a(r, dst) -= q * a(r, src);
    for (std::size_t r = 0; r < n; ++r) v(r, dst) -= q * v(r, src);
  };
  std::size_t c = 0;
  for (std::size_t r = 0; r < m && c < n; ++r) {
    while (true) {
      std::size_t best = n;
      for (std::size_t k = c; k < n; ++k)
        if (a(r, k) != 0 && (best == n || abs(a(r, k)) < abs(a(r, best)))) best = k;
      if (best == n) break;
      swap_cols(c, best);
      bool reduced = true;
      for (std::size_t k = c + 1; k < n; ++k) {
        if (a(r, k) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(r, k).get_mpz_t(), a(r, c).get_mpz_t());
        axpy_col(k, q, c);
        if (a(r, k) != 0) reduced = false;
      }
      if (reduced) {
        ++c;
        break;
      }
    }
  }
  std::vector<std::size_t> tail;
  for (std::size_t k = c; k < n; ++k) tail.push_back(k);
  return v.select_columns(tail);
}

struct SmithForm {
  std::vector<Integer> invariant_factors;  ///< positive, each divides the next
  std::size_t rank() const { return invariant_factors.size(); }
  std::vector<Integer> torsion() const {
    std::vector<Integer> t;
    for (const auto& d : invariant_factors)
      if (d != 1) t.push_back(d);
    return t;
  }
};

inline SmithForm smith_normal_form(ZMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm out;
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry of the trailing block
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (pr == m || abs(a(i, j)) < abs(a(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == m) break;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(t, k), a(pr, k));
    for (std::size_t k = 0; k < m; ++k) std::swap(a(k, t), a(k, pc));
    bool clean = true;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a(i, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
      for (std::size_t k = t; k < n; ++k) a(i, k) -= q * a(t, k);
      if (a(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a(t, j) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
      for (std::size_t k = t; k < m; ++k) a(k, j) -= q * a(k, t);
      if (a(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    // divisibility condition on the trailing block
    bool divides = true;
    for (std::size_t i = t + 1; i < m && divides; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(i, j) % a(t, t) != 0) {
          for (std::size_t k = t; k < n; ++k) a(t, k) += a(i, k);
          divides = false;
          break;
        }
    if (!divides) continue;
    out.invariant_factors.push_back(abs(a(t, t)));
    ++t;
  }
  return out;
}

}  // namespace equires
