#pragma once

#include <map>
#include <string>
#include <vector>

#include "equires/groups/group.hpp"

namespace equires {

/// Linear action of a finite group on Q^n or Z^n, one matrix per group element.
struct FiniteAction {
  FiniteGroup group;
  std::vector<QMatrix> matrices;

  std::size_t dimension() const { return matrices.empty() ? 0 : matrices.front().rows(); }
};

inline void check_action(const FiniteAction& a) {
  const FiniteGroup& f = a.group;
  if (a.matrices.size() != f.order) fail(ErrorKind::inconsistent_action, "inconsistent action: need one matrix per group element");
  const std::size_t n = a.dimension();
  for (const auto& m : a.matrices)
    if (m.rows() != n || m.cols() != n) fail(ErrorKind::inconsistent_action, "inconsistent action: matrices must be square of equal size");
  if (!(a.matrices[f.identity] == QMatrix::identity(n)))
    fail(ErrorKind::inconsistent_action, "inconsistent action: identity must act trivially");
  for (std::size_t x = 0; x < f.order; ++x)
    for (std::size_t y = 0; y < f.order; ++y)
      if (!(a.matrices[f.mul(x, y)] == a.matrices[x] * a.matrices[y]))
        fail(ErrorKind::inconsistent_action,
             "inconsistent action: rho(" + std::to_string(x) + "*" + std::to_string(y) + ") != rho(" + std::to_string(x) + ")rho(" + std::to_string(y) + ")");
}

/// Basis (as columns) of the rational invariant subspace, obtained by
/// averaging and reducing to echelon form.
inline QMatrix finite_invariants(const FiniteAction& a) {
  check_action(a);
  const std::size_t n = a.dimension();
  QMatrix avg(n, n);
  for (const auto& m : a.matrices) avg = avg + m;
  avg = Rational(1, static_cast<long>(a.group.order)) * avg;
  Echelon e = rref(avg.transpose());
  QMatrix out(n, e.pivots.size());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t r = 0; r < n; ++r) out(r, i) = e.reduced(i, r);
  return out;
}

/// Basis (as columns) of the integral invariant submodule: the integer kernel
/// of the stacked matrices rho(f) - I. The action must be integral.
inline ZMatrix finite_invariants_integral(const FiniteAction& a) {
  check_action(a);
  const std::size_t n = a.dimension();
  std::vector<ZMatrix> blocks;
  for (const auto& m : a.matrices) blocks.push_back(to_integer(m - QMatrix::identity(n)));
  return integer_kernel(vstack(blocks, n));
}

/// Permutation action of the quotient of an extension on a list of labels of
/// its normal part (e.g. a weight window). The list must be stable.
inline FiniteAction label_permutation_action(const GroupDesc& ext, const std::vector<IrredLabel>& labels) {
  const auto& x = ext.extension_data();
  std::map<IrredLabel, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  FiniteAction a{x.quotient, {}};
  for (std::size_t f = 0; f < x.quotient.order; ++f) {
    QMatrix m(labels.size(), labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = index.find(x.act(f, labels[i]));
      if (it == index.end()) fail(ErrorKind::inconsistent_action, "label set is not stable under the quotient action");
      m(it->second, i) = 1;
    }
    a.matrices.push_back(std::move(m));
  }
  return a;
}

}  // namespace equires
