#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "equires/groups/group.hpp"

namespace equires {

/// Finitely supported integer combination of irreducibles of one group.
/// Zero coefficients are never stored.
class RepRingElem {
 public:
  RepRingElem() = default;
  explicit RepRingElem(GroupDesc g) : group_(std::move(g)) {}

  static RepRingElem irreducible(const GroupDesc& g, IrredLabel l, Integer coeff = 1) {
    if (!is_valid_label(g, l)) fail(ErrorKind::invalid_argument, "label is not an irreducible of " + g.name());
    RepRingElem e(g);
    e.add_term(std::move(l), coeff);
    return e;
  }

  static RepRingElem one(const GroupDesc& g);

  const GroupDesc& group() const { return group_; }
  const std::map<IrredLabel, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const IrredLabel& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const IrredLabel& l, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(l, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Virtual dimension.
  Integer dimension() const {
    Integer d = 0;
    for (const auto& [l, c] : terms_) d += c * label_dimension(group_, l);
    return d;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [l, c] : terms_) {
      if (!first) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      Integer a = abs(c);
      if (a != 1) s += a.get_str() + "*";
      s += label_name(group_, l);
      first = false;
    }
    return s;
  }

  friend bool operator==(const RepRingElem& a, const RepRingElem& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }

 private:
  GroupDesc group_;
  std::map<IrredLabel, Integer> terms_;
};

inline void require_same_group(const GroupDesc& a, const GroupDesc& b) {
  if (!(a == b)) fail(ErrorKind::group_mismatch, "group mismatch: " + a.name() + " vs " + b.name());
}

inline RepRingElem operator+(const RepRingElem& a, const RepRingElem& b) {
  require_same_group(a.group(), b.group());
  RepRingElem out(a);
  for (const auto& [l, c] : b.terms()) out.add_term(l, c);
  return out;
}

inline RepRingElem operator-(const RepRingElem& a) {
  RepRingElem out(a.group());
  for (const auto& [l, c] : a.terms()) out.add_term(l, -c);
  return out;
}

inline RepRingElem operator-(const RepRingElem& a, const RepRingElem& b) { return a + (-b); }

inline RepRingElem operator*(const Integer& k, const RepRingElem& a) {
  RepRingElem out(a.group());
  for (const auto& [l, c] : a.terms()) out.add_term(l, k * c);
  return out;
}

namespace detail {

/// Twisted traces of an extension element: for each quotient element f, the
/// formal sum over f-fixed normal labels mu of trace(f | V_mu) [mu].
using TwistedTraces = std::vector<std::map<IrredLabel, Rational>>;

inline TwistedTraces twisted_traces(const RepRingElem& e) {
  const GroupDesc& g = e.group();
  const ExtensionData& x = g.extension_data();
  const FiniteGroup& q = x.quotient;
  TwistedTraces t(q.order);
  for (const auto& [l, c] : e.terms()) {
    IrredLabel n = normal_part(l);
    long s = l.v.back();
    if (s < 0) {
      for (const auto& m : label_orbit(x, n)) t[q.identity][m] += Rational(c);
    } else {
      for (std::size_t f = 0; f < q.order; ++f)
        t[f][n] += Rational(c) * q.character(static_cast<std::size_t>(s), f);
    }
  }
  for (auto& m : t)
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  return t;
}

inline RepRingElem from_twisted_traces(const GroupDesc& g, const TwistedTraces& t) {
  const ExtensionData& x = g.extension_data();
  const FiniteGroup& q = x.quotient;
  RepRingElem out(g);
  std::set<IrredLabel> done;
  for (const auto& [n, v] : t[q.identity]) {
    auto orbit = label_orbit(x, n);
    const IrredLabel& rep = orbit.front();
    if (done.count(rep)) continue;
    done.insert(rep);
    if (orbit.size() == 1) {
      for (std::size_t s = 0; s < q.num_irreducibles(); ++s) {
        Rational m = 0;
        for (std::size_t f = 0; f < q.order; ++f) {
          auto it = t[f].find(rep);
          if (it != t[f].end()) m += it->second * q.character(s, f);
        }
        m /= Rational(static_cast<long>(q.order)) * Rational(q.norms[s]);
        if (m.get_den() != 1) fail(ErrorKind::non_integral, "non-integral decomposition over " + g.name());
        IrredLabel l = rep;
        l.v.push_back(static_cast<long>(s));
        out.add_term(l, m.get_num());
      }
    } else if (orbit.size() == q.order) {
      auto it = t[q.identity].find(rep);
      Rational m = it == t[q.identity].end() ? Rational(0) : it->second;
      if (m.get_den() != 1) fail(ErrorKind::non_integral, "non-integral decomposition over " + g.name());
      IrredLabel l = rep;
      l.v.push_back(-1);
      out.add_term(l, m.get_num());
    } else {
      fail(ErrorKind::unsupported_group, "unsupported group: quotient stabilizers must be trivial or everything");
    }
  }
  return out;
}

inline RepRingElem tensor_labels(const GroupDesc& g, const IrredLabel& a, const IrredLabel& b);

}  // namespace detail

/// Tensor product, by character multiplication and re-decomposition.
inline RepRingElem operator*(const RepRingElem& a, const RepRingElem& b) {
  require_same_group(a.group(), b.group());
  const GroupDesc& g = a.group();
  if (g.kind() == GroupDesc::Kind::extension) {
    const ExtensionData& x = g.extension_data();
    auto ta = detail::twisted_traces(a);
    auto tb = detail::twisted_traces(b);
    detail::TwistedTraces tc(ta.size());
    for (std::size_t f = 0; f < ta.size(); ++f)
      for (const auto& [la, ca] : ta[f])
        for (const auto& [lb, cb] : tb[f]) {
          RepRingElem p = detail::tensor_labels(x.normal, la, lb);
          for (const auto& [lp, cp] : p.terms()) tc[f][lp] += ca * cb * Rational(cp);
        }
    for (auto& m : tc)
      for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    return detail::from_twisted_traces(g, tc);
  }
  RepRingElem out(g);
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) {
      RepRingElem p = detail::tensor_labels(g, la, lb);
      for (const auto& [lp, cp] : p.terms()) out.add_term(lp, ca * cb * cp);
    }
  return out;
}

inline RepRingElem detail::tensor_labels(const GroupDesc& g, const IrredLabel& a, const IrredLabel& b) {
  switch (g.kind()) {
    case GroupDesc::Kind::finite: {
      const FiniteGroup& f = g.finite_data();
      std::vector<Rational> values(f.classes.size());
      for (std::size_t c = 0; c < f.classes.size(); ++c)
        values[c] = f.characters[static_cast<std::size_t>(a.v[0])][c] * f.characters[static_cast<std::size_t>(b.v[0])][c];
      auto mult = decompose_class_function(f, values);
      RepRingElem out(g);
      for (std::size_t i = 0; i < mult.size(); ++i) out.add_term(IrredLabel{{static_cast<long>(i)}}, mult[i]);
      return out;
    }
    case GroupDesc::Kind::torus: {
      IrredLabel s;
      for (std::size_t i = 0; i < a.v.size(); ++i) s.v.push_back(a.v[i] + b.v[i]);
      RepRingElem out(g);
      out.add_term(s, 1);
      return out;
    }
    case GroupDesc::Kind::product: {
      auto pa = split_label(g, a);
      auto pb = split_label(g, b);
      std::vector<std::pair<IrredLabel, Integer>> acc{{IrredLabel{}, Integer(1)}};
      for (std::size_t i = 0; i < pa.size(); ++i) {
        RepRingElem fi = tensor_labels(g.factors()[i], pa[i], pb[i]);
        std::vector<std::pair<IrredLabel, Integer>> next;
        for (const auto& [l, c] : acc)
          for (const auto& [lf, cf] : fi.terms()) next.emplace_back(join_labels({l, lf}), c * cf);
        acc = std::move(next);
      }
      RepRingElem out(g);
      for (const auto& [l, c] : acc) out.add_term(l, c);
      return out;
    }
    case GroupDesc::Kind::extension:
      return RepRingElem::irreducible(g, a) * RepRingElem::irreducible(g, b);
  }
  return RepRingElem(g);
}

inline RepRingElem RepRingElem::one(const GroupDesc& g) {
  switch (g.kind()) {
    case GroupDesc::Kind::finite: {
      // the trivial character is the row that is 1 everywhere
      const FiniteGroup& f = g.finite_data();
      for (std::size_t i = 0; i < f.num_irreducibles(); ++i) {
        bool triv = std::all_of(f.characters[i].begin(), f.characters[i].end(), [](const Rational& v) { return v == 1; });
        if (triv) return irreducible(g, IrredLabel{{static_cast<long>(i)}});
      }
      fail(ErrorKind::invalid_argument, "character table has no trivial character");
    }
    case GroupDesc::Kind::torus: return irreducible(g, IrredLabel{std::vector<long>(g.torus_rank(), 0)});
    case GroupDesc::Kind::product: {
      std::vector<IrredLabel> parts;
      for (const auto& f : g.factors()) parts.push_back(one(f).terms().begin()->first);
      return irreducible(g, join_labels(parts));
    }
    case GroupDesc::Kind::extension: {
      const ExtensionData& x = g.extension_data();
      IrredLabel l = one(x.normal).terms().begin()->first;
      IrredLabel qt = one(GroupDesc::finite(x.quotient)).terms().begin()->first;
      l.v.push_back(qt.v[0]);
      return irreducible(g, l);
    }
  }
  return RepRingElem(g);
}

}  // namespace equires
