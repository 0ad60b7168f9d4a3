#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "equires/groups/polynomial.hpp"
#include "equires/groups/rep_ring.hpp"

namespace equires {

/// An injective homomorphism small -> big, carrying exactly the data needed to
/// restrict characters and invariant polynomials.
class SubgroupInclusion {
 public:
  enum class Kind {
    identity,    ///< small == big
    trivial,     ///< small is the trivial group
    finite_hom,  ///< finite into finite, given elementwise
    torus,       ///< T^r into T^n, weights restrict by an r x n integer matrix
    product,     ///< componentwise into a product
    normal,      ///< normal part of an extension
  };

  struct Component {
    Component(std::size_t f, const SubgroupInclusion& inc)
        : factor(f), inclusion(std::make_shared<const SubgroupInclusion>(inc)) {}
    std::size_t factor;  ///< index of the big factor receiving this component
    std::shared_ptr<const SubgroupInclusion> inclusion;
  };

  static SubgroupInclusion identity(const GroupDesc& g) {
    SubgroupInclusion inc(Kind::identity, g, g);
    return inc;
  }

  static SubgroupInclusion trivial(const GroupDesc& big) {
    return SubgroupInclusion(Kind::trivial, big, GroupDesc::finite(trivial_group()));
  }

  /// `element_map[s]` is the image in big of element s of small.
  static SubgroupInclusion finite_hom(const GroupDesc& big, const GroupDesc& small, std::vector<std::size_t> element_map) {
    if (big.kind() != GroupDesc::Kind::finite || small.kind() != GroupDesc::Kind::finite)
      fail(ErrorKind::invalid_argument, "finite_hom inclusion needs finite groups");
    const FiniteGroup& b = big.finite_data();
    const FiniteGroup& s = small.finite_data();
    if (element_map.size() != s.order) fail(ErrorKind::invalid_argument, "element map has wrong length");
    for (std::size_t x : element_map)
      if (x >= b.order) fail(ErrorKind::invalid_argument, "element map target out of range");
    for (std::size_t x = 0; x < s.order; ++x)
      for (std::size_t y = 0; y < s.order; ++y)
        if (element_map[s.mul(x, y)] != b.mul(element_map[x], element_map[y]))
          fail(ErrorKind::invalid_argument, "element map is not a homomorphism at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    for (std::size_t x = 0; x < s.order; ++x)
      if (x != s.identity && element_map[x] == b.identity) fail(ErrorKind::invalid_argument, "element map is not injective");
    SubgroupInclusion inc(Kind::finite_hom, big, small);
    inc.element_map_ = std::move(element_map);
    for (std::size_t i = 0; i < b.num_irreducibles(); ++i) inc.restrict_label(IrredLabel{{static_cast<long>(i)}});
    return inc;
  }

  /// `weights` is r x n: a weight m of T^n restricts to weights * m.
  static SubgroupInclusion torus(std::size_t big_rank, ZMatrix weights) {
    const std::size_t r = weights.rows();
    if (weights.cols() != big_rank) fail(ErrorKind::invalid_argument, "weight restriction matrix has wrong shape");
    auto snf = smith_normal_form(weights);
    if (snf.rank() != r || !snf.torsion().empty())
      fail(ErrorKind::invalid_argument, "weight restriction matrix does not define a subtorus");
    SubgroupInclusion inc(Kind::torus, GroupDesc::torus(big_rank), GroupDesc::torus(r));
    inc.weights_ = std::move(weights);
    return inc;
  }

  /// Components land in distinct big factors; big factors without a component
  /// meet the subgroup trivially. The small group is the product of the
  /// component subgroups (or the single component subgroup).
  static SubgroupInclusion product(const GroupDesc& big, std::vector<Component> components) {
    if (big.kind() != GroupDesc::Kind::product) fail(ErrorKind::invalid_argument, "product inclusion needs a product group");
    if (components.empty()) return trivial(big);
    std::vector<bool> used(big.factors().size(), false);
    std::vector<GroupDesc> smalls;
    for (const auto& c : components) {
      if (c.factor >= big.factors().size()) fail(ErrorKind::invalid_argument, "product component factor out of range");
      if (used[c.factor]) fail(ErrorKind::invalid_argument, "product components must use distinct factors");
      used[c.factor] = true;
      require_same_group(big.factors()[c.factor], c.inclusion->big());
      smalls.push_back(c.inclusion->small());
    }
    GroupDesc small = smalls.size() == 1 ? smalls.front() : GroupDesc::product(smalls);
    SubgroupInclusion inc(Kind::product, big, small);
    inc.components_ = std::move(components);
    return inc;
  }

  static SubgroupInclusion normal(const GroupDesc& big) {
    if (big.kind() != GroupDesc::Kind::extension) fail(ErrorKind::invalid_argument, "normal inclusion needs an extension");
    return SubgroupInclusion(Kind::normal, big, big.extension_data().normal);
  }

  Kind kind() const { return kind_; }
  const GroupDesc& big() const { return big_; }
  const GroupDesc& small() const { return small_; }
  const std::vector<std::size_t>& element_map() const { return element_map_; }
  const ZMatrix& weights() const { return weights_; }
  const std::vector<Component>& components() const { return components_; }

  /// Restriction of one irreducible of big.
  RepRingElem restrict_label(const IrredLabel& l) const {
    switch (kind_) {
      case Kind::identity: return RepRingElem::irreducible(small_, l);
      case Kind::trivial: return RepRingElem::irreducible(small_, IrredLabel{{0}}, label_dimension(big_, l));
      case Kind::finite_hom: {
        const FiniteGroup& b = big_.finite_data();
        const FiniteGroup& s = small_.finite_data();
        std::vector<Rational> values(s.classes.size());
        for (std::size_t c = 0; c < s.classes.size(); ++c)
          values[c] = b.character(static_cast<std::size_t>(l.v.at(0)), element_map_[s.classes[c].front()]);
        auto mult = decompose_class_function(s, values);
        RepRingElem out(small_);
        for (std::size_t i = 0; i < mult.size(); ++i) {
          if (mult[i] < 0) fail(ErrorKind::non_integral, "restriction has a negative multiplicity");
          out.add_term(IrredLabel{{static_cast<long>(i)}}, mult[i]);
        }
        return out;
      }
      case Kind::torus: {
        IrredLabel m;
        for (std::size_t i = 0; i < weights_.rows(); ++i) {
          Integer s = 0;
          for (std::size_t j = 0; j < weights_.cols(); ++j) s += weights_(i, j) * l.v.at(j);
          m.v.push_back(to_long(s));
        }
        return RepRingElem::irreducible(small_, m);
      }
      case Kind::product: {
        auto parts = split_label(big_, l);
        Integer scale = 1;
        std::vector<bool> used(parts.size(), false);
        for (const auto& c : components_) used[c.factor] = true;
        for (std::size_t i = 0; i < parts.size(); ++i)
          if (!used[i]) scale *= label_dimension(big_.factors()[i], parts[i]);
        std::vector<std::pair<IrredLabel, Integer>> acc{{IrredLabel{}, scale}};
        for (const auto& c : components_) {
          RepRingElem r = c.inclusion->restrict_label(parts[c.factor]);
          std::vector<std::pair<IrredLabel, Integer>> next;
          for (const auto& [a, ca] : acc)
            for (const auto& [b, cb] : r.terms()) next.emplace_back(join_labels({a, b}), ca * cb);
          acc = std::move(next);
        }
        RepRingElem out(small_);
        for (const auto& [a, c] : acc) out.add_term(a, c);
        return out;
      }
      case Kind::normal: {
        auto traces = detail::twisted_traces(RepRingElem::irreducible(big_, l));
        const auto& x = big_.extension_data();
        RepRingElem out(small_);
        for (const auto& [m, c] : traces[x.quotient.identity]) {
          if (c.get_den() != 1) fail(ErrorKind::non_integral, "non-integral restriction to the normal part");
          out.add_term(m, c.get_num());
        }
        return out;
      }
    }
    return RepRingElem(small_);
  }

  /// Lie algebra map small -> big as a big_dim x small_dim matrix L; an
  /// invariant polynomial p on big restricts to y -> p(L y).
  QMatrix lie_map() const {
    const std::size_t nb = big_.lie_dimension(), ns = small_.lie_dimension();
    switch (kind_) {
      case Kind::identity:
      case Kind::normal: return QMatrix::identity(nb);
      case Kind::trivial:
      case Kind::finite_hom: return QMatrix(nb, ns);
      case Kind::torus: return to_rational(weights_.transpose());
      case Kind::product: {
        QMatrix out(nb, ns);
        std::vector<std::size_t> big_off;
        std::size_t off = 0;
        for (const auto& f : big_.factors()) {
          big_off.push_back(off);
          off += f.lie_dimension();
        }
        std::size_t col = 0;
        for (const auto& c : components_) {
          QMatrix m = c.inclusion->lie_map();
          out.set_block(big_off[c.factor], col, m);
          col += m.cols();
        }
        return out;
      }
    }
    return QMatrix(nb, ns);
  }

 private:
  SubgroupInclusion(Kind k, GroupDesc big, GroupDesc small) : kind_(k), big_(std::move(big)), small_(std::move(small)) {}

  Kind kind_;
  GroupDesc big_;
  GroupDesc small_;
  std::vector<std::size_t> element_map_;
  ZMatrix weights_;
  std::vector<Component> components_;
};

inline RepRingElem rep_restrict(const SubgroupInclusion& inc, const RepRingElem& e) {
  require_same_group(inc.big(), e.group());
  RepRingElem out(inc.small());
  for (const auto& [l, c] : e.terms()) out = out + c * inc.restrict_label(l);
  return out;
}

inline Polynomial poly_restrict(const SubgroupInclusion& inc, const Polynomial& p) {
  return p.substitute(inc.lie_map());
}

inline InvPoly poly_restrict(const SubgroupInclusion& inc, const InvPoly& p) {
  require_same_group(inc.big(), p.group());
  return InvPoly::from_polynomial(inc.small(), p.to_polynomial().substitute(inc.lie_map()), p.max_degree());
}

/// Matrix of invariant-polynomial restriction in degree j, from the basis of
/// S^j(big*)^big to the basis of S^j(small*)^small.
inline QMatrix poly_restriction_matrix(const SubgroupInclusion& inc, int degree) {
  InvariantBasis from(inc.big(), degree), to(inc.small(), degree);
  QMatrix m(to.size(), from.size());
  const QMatrix lie = inc.lie_map();
  for (std::size_t c = 0; c < from.size(); ++c) {
    QVector v = to.coordinates(from.basis()[c].substitute(lie));
    for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
  }
  return m;
}

/// Matrix of character restriction from the labels `from` of big to the
/// labels `to` of small. Throws when a restriction leaves `to`.
inline QMatrix rep_restriction_matrix(const SubgroupInclusion& inc, const std::vector<IrredLabel>& from,
                                      const std::vector<IrredLabel>& to) {
  std::map<IrredLabel, std::size_t> index;
  for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
  QMatrix m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    RepRingElem r = inc.restrict_label(from[c]);
    for (const auto& [l, k] : r.terms()) {
      auto it = index.find(l);
      if (it == index.end())
        fail(ErrorKind::invalid_argument, "restriction of " + label_name(inc.big(), from[c]) + " leaves the label set of " + inc.small().name());
      m(it->second, c) = Rational(k);
    }
  }
  return m;
}

}  // namespace equires
