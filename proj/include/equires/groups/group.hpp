#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equires/core/error.hpp"
#include "equires/core/matrix.hpp"
#include "equires/groups/finite_group.hpp"

namespace equires {

/// Canonical label of an irreducible representation.
///
/// finite:    {index into the character table}
/// torus T^n: {m_1, ..., m_n} (weight vector)
/// product:   concatenation of the factor labels
/// extension: {normal label..., s} with s >= 0 the quotient irreducible
///            attached to an invariant normal label, s = -1 for an induced
///            (free-orbit) representation, normal label the orbit minimum.
struct IrredLabel {
  std::vector<long> v;
  auto operator<=>(const IrredLabel&) const = default;
  bool operator==(const IrredLabel&) const = default;
};

class GroupDesc;

struct ExtensionData;

/// A supported compact group: finite, torus, finite product, or a split
/// extension of a finite group by a torus or abelian finite normal subgroup.
/// Values are immutable and cheap to copy.
class GroupDesc {
 public:
  enum class Kind { finite, torus, product, extension };

  GroupDesc() : GroupDesc(finite(trivial_group())) {}

  static GroupDesc finite(FiniteGroup g);
  static GroupDesc torus(std::size_t rank);
  static GroupDesc product(std::vector<GroupDesc> factors);
  /// `weight_action[f]` acts on weights of a torus normal part (m -> A_f m);
  /// `label_action[f]` permutes irreducibles of a finite normal part.
  static GroupDesc extension(GroupDesc normal, FiniteGroup quotient, std::vector<ZMatrix> weight_action,
                             std::vector<std::vector<std::size_t>> label_action);

  Kind kind() const;
  const FiniteGroup& finite_data() const;
  std::size_t torus_rank() const;
  const std::vector<GroupDesc>& factors() const;
  const ExtensionData& extension_data() const;

  /// Dimension of the Lie algebra (number of polynomial coordinates).
  std::size_t lie_dimension() const;
  /// Number of integers in an IrredLabel of this group.
  std::size_t label_length() const;
  bool is_trivial() const;
  std::string name() const;

  friend bool operator==(const GroupDesc& a, const GroupDesc& b);

 private:
  struct Data;
  explicit GroupDesc(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

struct ExtensionData {
  GroupDesc normal;
  FiniteGroup quotient;
  std::vector<ZMatrix> weight_action;
  std::vector<std::vector<std::size_t>> label_action;

  /// Image of a normal-part label under quotient element f.
  IrredLabel act(std::size_t f, const IrredLabel& l) const {
    if (normal.kind() == GroupDesc::Kind::torus) {
      const ZMatrix& a = weight_action[f];
      IrredLabel out;
      out.v.assign(l.v.size(), 0);
      for (std::size_t i = 0; i < a.rows(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * l.v[j];
        out.v[i] = to_long(s);
      }
      return out;
    }
    return IrredLabel{{static_cast<long>(label_action[f][static_cast<std::size_t>(l.v[0])])}};
  }

  /// Coordinate substitution matrix of quotient element f on the Lie algebra
  /// (p -> p(C_f x), C_f = A_f^T), so that exp<A_f m, x> = exp<m, C_f x>.
  QMatrix coordinate_action(std::size_t f) const {
    if (normal.kind() != GroupDesc::Kind::torus) return QMatrix(0, 0);
    return to_rational(weight_action[f].transpose());
  }
};

struct GroupDesc::Data {
  Kind kind = Kind::finite;
  FiniteGroup finite;
  std::size_t rank = 0;
  std::vector<GroupDesc> factors;
  std::shared_ptr<ExtensionData> ext;
};

inline GroupDesc GroupDesc::finite(FiniteGroup g) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::finite;
  d->finite = std::move(g);
  return GroupDesc(std::move(d));
}

inline GroupDesc GroupDesc::torus(std::size_t rank) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::torus;
  d->rank = rank;
  return GroupDesc(std::move(d));
}

inline bool has_nonunit_norms(const GroupDesc& g) {
  switch (g.kind()) {
    case GroupDesc::Kind::finite: {
      const auto& n = g.finite_data().norms;
      return std::any_of(n.begin(), n.end(), [](const Integer& x) { return x != 1; });
    }
    case GroupDesc::Kind::torus: return false;
    case GroupDesc::Kind::product:
      return std::any_of(g.factors().begin(), g.factors().end(), [](const GroupDesc& f) { return has_nonunit_norms(f); });
    case GroupDesc::Kind::extension: {
      const auto& n = g.extension_data().quotient.norms;
      return std::any_of(n.begin(), n.end(), [](const Integer& x) { return x != 1; });
    }
  }
  return false;
}

inline GroupDesc GroupDesc::product(std::vector<GroupDesc> factors) {
  if (factors.size() < 2) fail(ErrorKind::invalid_argument, "a product needs at least two factors");
  // Tuples of rational irreducibles stay irreducible when at most one factor
  // has irreducibles that split over the complex numbers.
  std::size_t split = 0;
  for (const auto& f : factors) split += has_nonunit_norms(f) ? 1 : 0;
  if (split > 1) fail(ErrorKind::unsupported_group, "unsupported group: at most one product factor may have non-absolutely-irreducible rational characters");
  auto d = std::make_shared<Data>();
  d->kind = Kind::product;
  d->factors = std::move(factors);
  return GroupDesc(std::move(d));
}

inline GroupDesc GroupDesc::extension(GroupDesc normal, FiniteGroup quotient, std::vector<ZMatrix> weight_action,
                                      std::vector<std::vector<std::size_t>> label_action) {
  const std::size_t q = quotient.order;
  auto ext = std::make_shared<ExtensionData>();
  if (normal.kind() == Kind::torus) {
    const std::size_t n = normal.torus_rank();
    if (weight_action.size() != q) fail(ErrorKind::inconsistent_action, "inconsistent action: need one weight matrix per quotient element");
    for (std::size_t f = 0; f < q; ++f) {
      const ZMatrix& a = weight_action[f];
      if (a.rows() != n || a.cols() != n) fail(ErrorKind::inconsistent_action, "inconsistent action: weight matrix has wrong shape");
      if (rank(a) != n) fail(ErrorKind::inconsistent_action, "inconsistent action: weight matrix is singular");
    }
    if (!(weight_action[quotient.identity] == ZMatrix::identity(n)))
      fail(ErrorKind::inconsistent_action, "inconsistent action: identity must act trivially");
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (!(weight_action[quotient.mul(a, b)] == weight_action[a] * weight_action[b]))
          fail(ErrorKind::inconsistent_action, "inconsistent action: weight matrices violate the group law at (" +
                                                   std::to_string(a) + "," + std::to_string(b) + ")");
    label_action.clear();
  } else if (normal.kind() == Kind::finite) {
    const FiniteGroup& nf = normal.finite_data();
    for (std::size_t i = 0; i < nf.num_irreducibles(); ++i)
      if (nf.dimension(i) != 1 || nf.norms[i] != 1)
        fail(ErrorKind::unsupported_group, "unsupported group: finite normal part must be abelian with rational characters");
    if (label_action.size() != q) fail(ErrorKind::inconsistent_action, "inconsistent action: need one label permutation per quotient element");
    for (const auto& p : label_action) {
      if (p.size() != nf.num_irreducibles()) fail(ErrorKind::inconsistent_action, "inconsistent action: permutation has wrong length");
      std::vector<std::size_t> s(p);
      std::sort(s.begin(), s.end());
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != i) fail(ErrorKind::inconsistent_action, "inconsistent action: label action is not a permutation");
    }
    for (std::size_t i = 0; i < nf.num_irreducibles(); ++i)
      if (label_action[quotient.identity][i] != i) fail(ErrorKind::inconsistent_action, "inconsistent action: identity must act trivially");
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t i = 0; i < nf.num_irreducibles(); ++i)
          if (label_action[quotient.mul(a, b)][i] != label_action[a][label_action[b][i]])
            fail(ErrorKind::inconsistent_action, "inconsistent action: label permutations violate the group law");
    weight_action.clear();
  } else {
    fail(ErrorKind::unsupported_group, "unsupported group: extension normal part must be a torus or finite");
  }
  ext->normal = std::move(normal);
  ext->quotient = std::move(quotient);
  ext->weight_action = std::move(weight_action);
  ext->label_action = std::move(label_action);
  auto d = std::make_shared<Data>();
  d->kind = Kind::extension;
  d->ext = std::move(ext);
  return GroupDesc(std::move(d));
}

inline GroupDesc::Kind GroupDesc::kind() const { return data_->kind; }

inline const FiniteGroup& GroupDesc::finite_data() const {
  if (kind() != Kind::finite) fail(ErrorKind::invalid_argument, "group is not finite");
  return data_->finite;
}

inline std::size_t GroupDesc::torus_rank() const {
  if (kind() != Kind::torus) fail(ErrorKind::invalid_argument, "group is not a torus");
  return data_->rank;
}

inline const std::vector<GroupDesc>& GroupDesc::factors() const {
  if (kind() != Kind::product) fail(ErrorKind::invalid_argument, "group is not a product");
  return data_->factors;
}

inline const ExtensionData& GroupDesc::extension_data() const {
  if (kind() != Kind::extension) fail(ErrorKind::invalid_argument, "group is not an extension");
  return *data_->ext;
}

inline std::size_t GroupDesc::lie_dimension() const {
  switch (kind()) {
    case Kind::finite: return 0;
    case Kind::torus: return data_->rank;
    case Kind::product: {
      std::size_t n = 0;
      for (const auto& f : data_->factors) n += f.lie_dimension();
      return n;
    }
    case Kind::extension: return data_->ext->normal.lie_dimension();
  }
  return 0;
}

inline std::size_t GroupDesc::label_length() const {
  switch (kind()) {
    case Kind::finite: return 1;
    case Kind::torus: return data_->rank;
    case Kind::product: {
      std::size_t n = 0;
      for (const auto& f : data_->factors) n += f.label_length();
      return n;
    }
    case Kind::extension: return data_->ext->normal.label_length() + 1;
  }
  return 0;
}

inline bool GroupDesc::is_trivial() const {
  switch (kind()) {
    case Kind::finite: return data_->finite.order == 1;
    case Kind::torus: return data_->rank == 0;
    case Kind::product:
      return std::all_of(data_->factors.begin(), data_->factors.end(), [](const GroupDesc& f) { return f.is_trivial(); });
    case Kind::extension: return false;
  }
  return false;
}

inline std::string GroupDesc::name() const {
  switch (kind()) {
    case Kind::finite: {
      const auto& f = data_->finite;
      if (f.builtin == "cyclic") return f.builtin_param == 1 ? "1" : "Z" + std::to_string(f.builtin_param);
      if (f.builtin == "dihedral") return "D" + std::to_string(f.builtin_param);
      if (f.builtin == "symmetric") return "S" + std::to_string(f.builtin_param);
      return "F" + std::to_string(f.order);
    }
    case Kind::torus: return data_->rank == 1 ? "S1" : "T" + std::to_string(data_->rank);
    case Kind::product: {
      std::string s;
      for (std::size_t i = 0; i < data_->factors.size(); ++i) s += (i ? "x" : "") + data_->factors[i].name();
      return s;
    }
    case Kind::extension:
      return data_->ext->normal.name() + ":" + GroupDesc::finite(data_->ext->quotient).name();
  }
  return "?";
}

inline bool operator==(const GroupDesc& a, const GroupDesc& b) {
  if (a.data_ == b.data_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case GroupDesc::Kind::finite: return a.data_->finite == b.data_->finite;
    case GroupDesc::Kind::torus: return a.data_->rank == b.data_->rank;
    case GroupDesc::Kind::product: return a.data_->factors == b.data_->factors;
    case GroupDesc::Kind::extension: {
      const auto& x = *a.data_->ext;
      const auto& y = *b.data_->ext;
      return x.normal == y.normal && x.quotient == y.quotient && x.weight_action == y.weight_action &&
             x.label_action == y.label_action;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Labels

/// Splits a product label into its factor labels.
inline std::vector<IrredLabel> split_label(const GroupDesc& g, const IrredLabel& l) {
  std::vector<IrredLabel> out;
  std::size_t off = 0;
  for (const auto& f : g.factors()) {
    const std::size_t n = f.label_length();
    out.push_back(IrredLabel{std::vector<long>(l.v.begin() + static_cast<std::ptrdiff_t>(off),
                                               l.v.begin() + static_cast<std::ptrdiff_t>(off + n))});
    off += n;
  }
  return out;
}

inline IrredLabel join_labels(const std::vector<IrredLabel>& parts) {
  IrredLabel l;
  for (const auto& p : parts) l.v.insert(l.v.end(), p.v.begin(), p.v.end());
  return l;
}

inline IrredLabel normal_part(const IrredLabel& l) { return IrredLabel{std::vector<long>(l.v.begin(), l.v.end() - 1)}; }

/// Orbit of a normal-part label under the quotient action, sorted.
inline std::vector<IrredLabel> label_orbit(const ExtensionData& e, const IrredLabel& l) {
  std::set<IrredLabel> orbit;
  for (std::size_t f = 0; f < e.quotient.order; ++f) orbit.insert(e.act(f, l));
  return {orbit.begin(), orbit.end()};
}

inline std::string label_name(const GroupDesc& g, const IrredLabel& l) {
  switch (g.kind()) {
    case GroupDesc::Kind::finite: return g.finite_data().names.at(static_cast<std::size_t>(l.v.at(0)));
    case GroupDesc::Kind::torus: {
      if (l.v.size() == 1) return "z^" + std::to_string(l.v[0]);
      std::string s = "z^(";
      for (std::size_t i = 0; i < l.v.size(); ++i) s += (i ? "," : "") + std::to_string(l.v[i]);
      return s + ")";
    }
    case GroupDesc::Kind::product: {
      auto parts = split_label(g, l);
      std::string s;
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + label_name(g.factors()[i], parts[i]);
      return s;
    }
    case GroupDesc::Kind::extension: {
      const auto& e = g.extension_data();
      IrredLabel n = normal_part(l);
      long s = l.v.back();
      if (s < 0) {
        std::string out = "ind(";
        auto orbit = label_orbit(e, n);
        for (std::size_t i = 0; i < orbit.size(); ++i) out += (i ? "+" : "") + label_name(e.normal, orbit[i]);
        return out + ")";
      }
      return label_name(e.normal, n) + "|" + e.quotient.names.at(static_cast<std::size_t>(s));
    }
  }
  return "?";
}

inline Integer label_dimension(const GroupDesc& g, const IrredLabel& l) {
  switch (g.kind()) {
    case GroupDesc::Kind::finite: return g.finite_data().dimension(static_cast<std::size_t>(l.v.at(0)));
    case GroupDesc::Kind::torus: return 1;
    case GroupDesc::Kind::product: {
      auto parts = split_label(g, l);
      Integer d = 1;
      for (std::size_t i = 0; i < parts.size(); ++i) d *= label_dimension(g.factors()[i], parts[i]);
      return d;
    }
    case GroupDesc::Kind::extension: {
      const auto& e = g.extension_data();
      IrredLabel n = normal_part(l);
      long s = l.v.back();
      if (s < 0) return Integer(static_cast<long>(label_orbit(e, n).size()));
      return e.quotient.dimension(static_cast<std::size_t>(s));
    }
  }
  return 0;
}

/// Checks that `l` is a canonical label of `g`.
inline bool is_valid_label(const GroupDesc& g, const IrredLabel& l) {
  if (l.v.size() != g.label_length()) return false;
  switch (g.kind()) {
    case GroupDesc::Kind::finite:
      return l.v[0] >= 0 && static_cast<std::size_t>(l.v[0]) < g.finite_data().num_irreducibles();
    case GroupDesc::Kind::torus: return true;
    case GroupDesc::Kind::product: {
      auto parts = split_label(g, l);
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!is_valid_label(g.factors()[i], parts[i])) return false;
      return true;
    }
    case GroupDesc::Kind::extension: {
      const auto& e = g.extension_data();
      IrredLabel n = normal_part(l);
      if (!is_valid_label(e.normal, n)) return false;
      auto orbit = label_orbit(e, n);
      if (orbit.front() != n) return false;
      long s = l.v.back();
      if (orbit.size() == 1) return s >= 0 && static_cast<std::size_t>(s) < e.quotient.num_irreducibles();
      if (orbit.size() == e.quotient.order) return s == -1;
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Irreducibles

struct IrreducibleInfo {
  IrredLabel label;
  Integer dimension;
};

inline std::vector<IrredLabel> window_labels(const GroupDesc& g, long window);

namespace detail {

inline void torus_window(std::size_t rank, long w, std::vector<long>& cur, std::vector<IrredLabel>& out) {
  if (cur.size() == rank) {
    out.push_back(IrredLabel{cur});
    return;
  }
  for (long a = -w; a <= w; ++a) {
    cur.push_back(a);
    torus_window(rank, w, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All irreducible labels of `g` whose torus weights have |coordinate| <= window,
/// in ascending label order. Finite groups ignore the window.
inline std::vector<IrredLabel> window_labels(const GroupDesc& g, long window) {
  if (window < 0) fail(ErrorKind::invalid_argument, "weight window must be nonnegative");
  std::vector<IrredLabel> out;
  switch (g.kind()) {
    case GroupDesc::Kind::finite:
      for (std::size_t i = 0; i < g.finite_data().num_irreducibles(); ++i) out.push_back(IrredLabel{{static_cast<long>(i)}});
      break;
    case GroupDesc::Kind::torus: {
      std::vector<long> cur;
      detail::torus_window(g.torus_rank(), window, cur, out);
      break;
    }
    case GroupDesc::Kind::product: {
      std::vector<std::vector<IrredLabel>> per;
      for (const auto& f : g.factors()) per.push_back(window_labels(f, window));
      std::vector<IrredLabel> acc{IrredLabel{}};
      for (const auto& labels : per) {
        std::vector<IrredLabel> next;
        for (const auto& a : acc)
          for (const auto& b : labels) next.push_back(join_labels({a, b}));
        acc = std::move(next);
      }
      out = std::move(acc);
      break;
    }
    case GroupDesc::Kind::extension: {
      const auto& e = g.extension_data();
      auto normal = window_labels(e.normal, window);
      std::set<IrredLabel> in_window(normal.begin(), normal.end());
      for (const auto& n : normal) {
        auto orbit = label_orbit(e, n);
        for (const auto& m : orbit)
          if (!in_window.count(m))
            fail(ErrorKind::invalid_argument, "weight window is not stable under the quotient action");
        if (orbit.front() != n) continue;
        if (orbit.size() == 1) {
          for (std::size_t s = 0; s < e.quotient.num_irreducibles(); ++s) {
            IrredLabel l = n;
            l.v.push_back(static_cast<long>(s));
            out.push_back(std::move(l));
          }
        } else if (orbit.size() == e.quotient.order) {
          IrredLabel l = n;
          l.v.push_back(-1);
          out.push_back(std::move(l));
        } else {
          fail(ErrorKind::unsupported_group, "unsupported group: quotient stabilizers must be trivial or everything");
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Irreducibles of `g` within the weight window, with their dimensions.
inline std::vector<IrreducibleInfo> irreducibles(const GroupDesc& g, long window) {
  std::vector<IrreducibleInfo> out;
  for (auto& l : window_labels(g, window)) {
    Integer d = label_dimension(g, l);
    out.push_back({std::move(l), d});
  }
  return out;
}

}  // namespace equires
