#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equires/cochain/complex.hpp"

namespace equires {

/// One compatibility constraint i* u = psi# v between the total complex and
/// a base complex, both mapped into a face complex.
struct PullbackPart {
  std::string name;
  Complex base;
  Complex face;
  std::vector<QMatrix> restrict_map;  ///< i*: total^q -> face^q
  std::vector<QMatrix> compare_map;   ///< psi#: base^q -> face^q
};

/// Subcomplex of total + sum of bases cut out by the constraints, with the
/// embedding of each degree into the ambient direct sum.
struct PullbackComplex {
  Complex complex;
  std::vector<QMatrix> embedding;  ///< [q]: ambient^q x dim^q

  /// Offset of block b (0 = total, k = part k-1) in the ambient space of degree q.
  std::vector<std::vector<std::size_t>> offsets;
  std::vector<std::size_t> ambient_dims;
};

namespace detail {

inline QMatrix map_at(const std::vector<QMatrix>& maps, std::size_t q, std::size_t rows, std::size_t cols) {
  if (q < maps.size()) {
    if (maps[q].rows() != rows || maps[q].cols() != cols)
      fail(ErrorKind::invalid_argument, "map in degree " + std::to_string(q) + " has the wrong shape");
    return maps[q];
  }
  return QMatrix(rows, cols);
}

inline void check_chain_map(const Complex& from, const Complex& to, const std::vector<QMatrix>& f, std::size_t length,
                            const std::string& what) {
  for (std::size_t q = 0; q < length; ++q) {
    const int qi = static_cast<int>(q);
    QMatrix fq = map_at(f, q, to.dim(qi), from.dim(qi));
    QMatrix fq1 = map_at(f, q + 1, to.dim(qi + 1), from.dim(qi + 1));
    if (!(to.d(qi) * fq == fq1 * from.d(qi)))
      fail(ErrorKind::not_chain_map, what + " is not a chain map in degree " + std::to_string(q));
  }
}

}  // namespace detail

/// Differential of the ambient sum total + bases in degree q.
inline QMatrix ambient_differential(const Complex& total, const std::vector<PullbackPart>& parts, std::size_t q) {
  const int qi = static_cast<int>(q);
  std::vector<QMatrix> blocks{total.d(qi)};
  for (const auto& p : parts) blocks.push_back(p.base.d(qi));
  return block_diagonal(blocks);
}

/// Constraint rows in degree q: i*_k u - psi#_k v_k = 0, plus v_k = 0 for k in `zero`.
/// `offsets` gives the block layout of the ambient sum.
inline QMatrix constraint_matrix(const Complex& total, const std::vector<PullbackPart>& parts, const std::vector<std::size_t>& offsets,
                                 std::size_t q, const std::set<std::size_t>& zero = {}) {
  const int qi = static_cast<int>(q);
  std::size_t rows = 0, cols = total.dim(qi);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    rows += parts[k].face.dim(qi) + (zero.count(k) ? parts[k].base.dim(qi) : 0);
    cols += parts[k].base.dim(qi);
  }
  QMatrix c(rows, cols);
  std::size_t r = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const PullbackPart& p = parts[k];
    c.set_block(r, 0, detail::map_at(p.restrict_map, q, p.face.dim(qi), total.dim(qi)));
    c.set_block(r, offsets[k + 1], -detail::map_at(p.compare_map, q, p.face.dim(qi), p.base.dim(qi)));
    r += p.face.dim(qi);
    if (zero.count(k)) {
      c.set_block(r, offsets[k + 1], QMatrix::identity(p.base.dim(qi)));
      r += p.base.dim(qi);
    }
  }
  return c;
}

/// Pullback (compatibility) complex. Parts listed in `zero` have v forced to 0,
/// which gives the relative complex.
inline PullbackComplex pullback_complex(const Complex& total, const std::vector<PullbackPart>& parts,
                                        const std::set<std::size_t>& zero = {}) {
  std::size_t length = total.length();
  for (const auto& p : parts) length = std::max({length, p.base.length(), p.face.length()});
  for (std::size_t k = 0; k < parts.size(); ++k) {
    detail::check_chain_map(total, parts[k].face, parts[k].restrict_map, length, "restriction of part " + parts[k].name);
    detail::check_chain_map(parts[k].base, parts[k].face, parts[k].compare_map, length, "comparison of part " + parts[k].name);
  }
  PullbackComplex out;
  for (std::size_t q = 0; q < length; ++q) {
    const int qi = static_cast<int>(q);
    std::vector<std::size_t> off{0};
    std::size_t amb = total.dim(qi);
    for (const auto& p : parts) {
      off.push_back(amb);
      amb += p.base.dim(qi);
    }
    out.offsets.push_back(off);
    out.ambient_dims.push_back(amb);
  }
  std::vector<QMatrix> kernels;
  for (std::size_t q = 0; q < length; ++q) kernels.push_back(kernel(constraint_matrix(total, parts, out.offsets[q], q, zero)));
  std::vector<std::size_t> dims;
  std::vector<QMatrix> d;
  for (std::size_t q = 0; q < length; ++q) {
    dims.push_back(kernels[q].cols());
    if (q + 1 == length) break;
    QMatrix image = ambient_differential(total, parts, q) * kernels[q];
    auto x = solve(kernels[q + 1], image);
    if (!x) fail(ErrorKind::not_chain_map, "compatibility subspace is not preserved by d in degree " + std::to_string(q));
    d.push_back(std::move(*x));
  }
  out.complex = Complex::make(std::move(dims), std::move(d));
  out.embedding = std::move(kernels);
  return out;
}

/// Coordinates in the pullback complex of an ambient cochain of degree q;
/// fails when the cochain violates a compatibility constraint.
inline QVector pullback_coordinates(const PullbackComplex& pc, std::size_t q, const QVector& ambient) {
  if (q >= pc.embedding.size() || ambient.size() != pc.ambient_dims[q])
    fail(ErrorKind::invalid_argument, "cochain has the wrong length in degree " + std::to_string(q));
  auto x = solve(pc.embedding[q], ambient);
  if (!x) fail(ErrorKind::not_cocycle, "cochain violates the compatibility constraints in degree " + std::to_string(q));
  return *x;
}

/// True when every stratum deeper than a member of B also lies in B.
/// `order` lists pairs (deeper, shallower) of part indices.
inline bool is_upward_closed(const std::set<std::size_t>& b, const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  bool changed = true;
  std::set<std::size_t> closure = b;
  while (changed) {
    changed = false;
    for (const auto& [deeper, shallower] : order)
      if (closure.count(shallower) && !closure.count(deeper)) {
        closure.insert(deeper);
        changed = true;
      }
  }
  return closure == b;
}

/// Relative complex: v = 0 on the parts in B, which must be upward closed.
inline PullbackComplex relative_complex(const Complex& total, const std::vector<PullbackPart>& parts, const std::set<std::size_t>& b,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  for (std::size_t k : b)
    if (k >= parts.size()) fail(ErrorKind::invalid_argument, "relative set names a missing part");
  if (!is_upward_closed(b, order)) fail(ErrorKind::not_upward_closed, "relative set is not upward closed in the isotropy order");
  return pullback_complex(total, parts, b);
}

}  // namespace equires
