#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "equires/resolution/space.hpp"

namespace equires::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::parse, "schema error at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

inline std::string at(const std::string& path, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return path + "/" + k;
}
inline std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(at(path, key), "missing required key");
  return *it;
}

inline const Json* optional_member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

inline std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

inline Integer integer(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "integers are written as strings");
  try {
    return parse_integer(j.get<std::string>());
  } catch (const Error&) {
    schema_error(path, "not an integer: '" + j.get<std::string>() + "'");
  }
}

inline long small_integer(const Json& j, const std::string& path) {
  Integer z = integer(j, path);
  if (!z.fits_slong_p()) schema_error(path, "integer out of range");
  return z.get_si();
}

inline std::size_t index(const Json& j, const std::string& path) {
  long v = small_integer(j, path);
  if (v < 0) schema_error(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline Rational rational(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "rationals are written as strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    schema_error(path, "not a rational: '" + j.get<std::string>() + "'");
  }
}

inline std::vector<std::vector<std::string>> string_table(const Json& j, const std::string& path) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t r = 0; r < array(j, path).size(); ++r) {
    out.emplace_back();
    for (std::size_t c = 0; c < array(j[r], at(path, r)).size(); ++c) out.back().push_back(text(j[r][c], at(at(path, r), c)));
  }
  return out;
}

inline ZMatrix integer_matrix(const Json& j, const std::string& path) {
  const Json& rows = array(j, path);
  std::size_t cols = rows.empty() ? 0 : array(rows[0], at(path, 0)).size();
  ZMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (array(rows[r], at(path, r)).size() != cols) schema_error(at(path, r), "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(rows[r][c], at(at(path, r), c));
  }
  return m;
}

inline Json str(long v) { return Json(std::to_string(v)); }
inline Json str(std::size_t v) { return Json(std::to_string(v)); }
inline Json str(const Integer& v) { return Json(to_string(v)); }

inline Json matrix_json(const ZMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(str(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Groups

inline FiniteGroup parse_finite(const Json& j, const std::string& path) {
  if (const Json* b = optional_member(j, "builtin", path)) {
    const std::string name = text(*b, at(path, "builtin"));
    const long n = small_integer(member(j, "param", path), at(path, "param"));
    try {
      if (name == "cyclic") return cyclic_group(n);
      if (name == "dihedral") return dihedral_group(n);
      if (name == "symmetric") return symmetric_group(n);
    } catch (const Error& e) {
      schema_error(at(path, "param"), e.what());
    }
    schema_error(at(path, "builtin"), "unknown builtin finite group '" + name + "'");
  }
  const Json& table = array(member(j, "table", path), at(path, "table"));
  std::vector<std::vector<std::size_t>> t;
  for (std::size_t r = 0; r < table.size(); ++r) {
    t.emplace_back();
    for (std::size_t c = 0; c < array(table[r], at(at(path, "table"), r)).size(); ++c)
      t.back().push_back(index(table[r][c], at(at(at(path, "table"), r), c)));
  }
  const Json& chars = array(member(j, "characters", path), at(path, "characters"));
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < chars.size(); ++r) {
    rows.emplace_back();
    for (std::size_t c = 0; c < array(chars[r], at(at(path, "characters"), r)).size(); ++c)
      rows.back().push_back(rational(chars[r][c], at(at(at(path, "characters"), r), c)));
  }
  std::vector<std::string> names;
  if (const Json* n = optional_member(j, "names", path))
    for (std::size_t i = 0; i < array(*n, at(path, "names")).size(); ++i) names.push_back(text((*n)[i], at(at(path, "names"), i)));
  try {
    return make_finite_group(std::move(t), rows, std::move(names));
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

inline Json finite_json(const FiniteGroup& g) {
  Json j;
  j["kind"] = "finite";
  if (!g.builtin.empty()) {
    j["builtin"] = g.builtin;
    j["param"] = str(g.builtin_param);
    return j;
  }
  Json table = Json::array();
  for (const auto& row : g.table) {
    Json r = Json::array();
    for (std::size_t x : row) r.push_back(str(x));
    table.push_back(std::move(r));
  }
  j["table"] = std::move(table);
  Json chars = Json::array();
  for (std::size_t i = 0; i < g.num_irreducibles(); ++i) {
    Json r = Json::array();
    for (std::size_t x = 0; x < g.order; ++x) r.push_back(to_string(g.character(i, x)));
    chars.push_back(std::move(r));
  }
  j["characters"] = std::move(chars);
  j["names"] = g.names;
  return j;
}

class GroupTable {
 public:
  explicit GroupTable(const Json& groups) : groups_(groups) {
    if (!groups_.is_object()) schema_error("/groups", "expected an object of named groups");
  }

  GroupDesc get(const std::string& name, const std::string& ref_path) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    auto it = groups_.find(name);
    if (it == groups_.end()) schema_error(ref_path, "unknown group '" + name + "'");
    const std::string path = at("/groups", name);
    if (!active_.insert(name).second) schema_error(path, "group definition refers to itself");
    GroupDesc g = build(*it, path);
    active_.erase(name);
    done_.emplace(name, g);
    return g;
  }

 private:
  GroupDesc build(const Json& j, const std::string& path) {
    const std::string kind = text(member(j, "kind", path), at(path, "kind"));
    if (kind == "finite") return GroupDesc::finite(parse_finite(j, path));
    if (kind == "torus") return GroupDesc::torus(index(member(j, "rank", path), at(path, "rank")));
    if (kind == "product") {
      const Json& f = array(member(j, "factors", path), at(path, "factors"));
      std::vector<GroupDesc> factors;
      for (std::size_t i = 0; i < f.size(); ++i) factors.push_back(get(text(f[i], at(at(path, "factors"), i)), at(at(path, "factors"), i)));
      try {
        return GroupDesc::product(std::move(factors));
      } catch (const Error& e) {
        schema_error(path, e.what());
      }
    }
    if (kind == "extension") {
      GroupDesc normal = get(text(member(j, "normal", path), at(path, "normal")), at(path, "normal"));
      GroupDesc quotient = get(text(member(j, "quotient", path), at(path, "quotient")), at(path, "quotient"));
      if (quotient.kind() != GroupDesc::Kind::finite) schema_error(at(path, "quotient"), "extension quotient must be finite");
      std::vector<ZMatrix> weights;
      std::vector<std::vector<std::size_t>> labels;
      if (const Json* w = optional_member(j, "weight_action", path))
        for (std::size_t f = 0; f < array(*w, at(path, "weight_action")).size(); ++f)
          weights.push_back(integer_matrix((*w)[f], at(at(path, "weight_action"), f)));
      if (const Json* l = optional_member(j, "label_action", path))
        for (std::size_t f = 0; f < array(*l, at(path, "label_action")).size(); ++f) {
          labels.emplace_back();
          const std::string lp = at(at(path, "label_action"), f);
          for (std::size_t i = 0; i < array((*l)[f], lp).size(); ++i) labels.back().push_back(index((*l)[f][i], at(lp, i)));
        }
      try {
        return GroupDesc::extension(normal, quotient.finite_data(), std::move(weights), std::move(labels));
      } catch (const Error& e) {
        schema_error(path, e.what());
      }
    }
    schema_error(at(path, "kind"), "unknown group kind '" + kind + "'");
  }

  const Json& groups_;
  std::map<std::string, GroupDesc> done_;
  std::set<std::string> active_;
};

/// Assigns stable names to groups and writes their definitions, dependencies first.
class GroupWriter {
 public:
  std::string name(const GroupDesc& g) {
    for (const auto& [n, h] : named_)
      if (h == g) return n;
    Json j;
    switch (g.kind()) {
      case GroupDesc::Kind::finite: j = finite_json(g.finite_data()); break;
      case GroupDesc::Kind::torus:
        j["kind"] = "torus";
        j["rank"] = str(g.torus_rank());
        break;
      case GroupDesc::Kind::product: {
        Json f = Json::array();
        for (const auto& h : g.factors()) f.push_back(name(h));
        j["kind"] = "product";
        j["factors"] = std::move(f);
        break;
      }
      case GroupDesc::Kind::extension: {
        const ExtensionData& e = g.extension_data();
        j["kind"] = "extension";
        j["normal"] = name(e.normal);
        j["quotient"] = name(GroupDesc::finite(e.quotient));
        Json w = Json::array();
        for (const auto& m : e.weight_action) w.push_back(matrix_json(m));
        j["weight_action"] = std::move(w);
        Json l = Json::array();
        for (const auto& row : e.label_action) {
          Json r = Json::array();
          for (std::size_t x : row) r.push_back(str(x));
          l.push_back(std::move(r));
        }
        j["label_action"] = std::move(l);
        break;
      }
    }
    std::string n = g.name();
    for (int k = 2; used(n); ++k) n = g.name() + "#" + std::to_string(k);
    named_.emplace_back(n, g);
    json_[n] = std::move(j);
    return n;
  }

  const Json& json() const { return json_; }

 private:
  bool used(const std::string& n) const {
    for (const auto& [m, h] : named_)
      if (m == n) return true;
    return false;
  }

  std::vector<std::pair<std::string, GroupDesc>> named_;
  Json json_ = Json::object();
};

// ---------------------------------------------------------------------------
// Inclusions

inline SubgroupInclusion parse_inclusion(const Json& j, const GroupDesc& big, const GroupDesc& small, const std::string& path) {
  const std::string kind = text(member(j, "kind", path), at(path, "kind"));
  try {
    SubgroupInclusion inc = [&]() -> SubgroupInclusion {
      if (kind == "identity") return SubgroupInclusion::identity(big);
      if (kind == "trivial") return SubgroupInclusion::trivial(big);
      if (kind == "normal") return SubgroupInclusion::normal(big);
      if (kind == "finite_hom") {
        std::vector<std::size_t> map;
        const Json& m = array(member(j, "element_map", path), at(path, "element_map"));
        for (std::size_t i = 0; i < m.size(); ++i) map.push_back(index(m[i], at(at(path, "element_map"), i)));
        return SubgroupInclusion::finite_hom(big, small, std::move(map));
      }
      if (kind == "torus") {
        if (big.kind() != GroupDesc::Kind::torus) schema_error(path, "torus inclusion needs a torus");
        return SubgroupInclusion::torus(big.torus_rank(), integer_matrix(member(j, "weights", path), at(path, "weights")));
      }
      if (kind == "product") {
        if (big.kind() != GroupDesc::Kind::product) schema_error(path, "product inclusion needs a product group");
        const Json& cs = array(member(j, "components", path), at(path, "components"));
        std::vector<SubgroupInclusion::Component> comps;
        for (std::size_t i = 0; i < cs.size(); ++i) {
          const std::string cp = at(at(path, "components"), i);
          const std::size_t f = index(member(cs[i], "factor", cp), at(cp, "factor"));
          if (f >= big.factors().size()) schema_error(at(cp, "factor"), "factor out of range");
          GroupDesc sub = cs.size() == 1 ? small
                          : small.kind() == GroupDesc::Kind::product && i < small.factors().size()
                              ? small.factors()[i]
                              : small;
          comps.emplace_back(f, parse_inclusion(member(cs[i], "inclusion", cp), big.factors()[f], sub, at(cp, "inclusion")));
        }
        return SubgroupInclusion::product(big, std::move(comps));
      }
      schema_error(at(path, "kind"), "unknown inclusion kind '" + kind + "'");
    }();
    if (!(inc.small() == small)) schema_error(path, "inclusion source is " + inc.small().name() + ", expected " + small.name());
    return inc;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse) throw;
    schema_error(path, e.what());
  }
}

inline Json inclusion_json(const SubgroupInclusion& inc) {
  Json j;
  switch (inc.kind()) {
    case SubgroupInclusion::Kind::identity: j["kind"] = "identity"; break;
    case SubgroupInclusion::Kind::trivial: j["kind"] = "trivial"; break;
    case SubgroupInclusion::Kind::normal: j["kind"] = "normal"; break;
    case SubgroupInclusion::Kind::finite_hom: {
      j["kind"] = "finite_hom";
      Json m = Json::array();
      for (std::size_t x : inc.element_map()) m.push_back(str(x));
      j["element_map"] = std::move(m);
      break;
    }
    case SubgroupInclusion::Kind::torus:
      j["kind"] = "torus";
      j["weights"] = matrix_json(inc.weights());
      break;
    case SubgroupInclusion::Kind::product: {
      j["kind"] = "product";
      Json cs = Json::array();
      for (const auto& c : inc.components()) {
        Json cj;
        cj["factor"] = str(c.factor);
        cj["inclusion"] = inclusion_json(*c.inclusion);
        cs.push_back(std::move(cj));
      }
      j["components"] = std::move(cs);
      break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Complexes

inline CellComplex parse_complex(const Json& j, const std::string& path) {
  const Json& cells = array(member(j, "cells", path), at(path, "cells"));
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string cp = at(at(path, "cells"), i);
    Cell c;
    const long dim = small_integer(member(cells[i], "dim", cp), at(cp, "dim"));
    if (dim < 0) schema_error(at(cp, "dim"), "cell dimension must be nonnegative");
    c.dim = static_cast<int>(dim);
    const Json& b = array(member(cells[i], "boundary", cp), at(cp, "boundary"));
    for (std::size_t e = 0; e < b.size(); ++e) {
      const std::string ep = at(at(cp, "boundary"), e);
      if (!b[e].is_array() || b[e].size() != 2) schema_error(ep, "boundary entry must be [face, coefficient]");
      const std::size_t face = index(b[e][0], at(ep, 0));
      if (face >= cells.size()) schema_error(at(ep, 0), "face id " + std::to_string(face) + " does not name a cell");
      c.boundary.push_back({face, small_integer(b[e][1], at(ep, 1))});
    }
    out.push_back(std::move(c));
  }
  return CellComplex(std::move(out));
}

inline Json complex_json(const CellComplex& c) {
  Json cells = Json::array();
  for (const Cell& cell : c.cells()) {
    Json b = Json::array();
    for (const auto& inc : cell.boundary) b.push_back(Json::array({str(inc.face), str(inc.coeff)}));
    Json cj;
    cj["dim"] = str(static_cast<long>(cell.dim));
    cj["boundary"] = std::move(b);
    cells.push_back(std::move(cj));
  }
  Json j;
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace detail

/// Reads a resolution space from its JSON description.
inline ResolutionSpace parse_space(const std::string& input) {
  using namespace detail;
  Json doc;
  try {
    doc = Json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("", "expected an object");
  ResolutionSpace sp;
  if (const Json* n = optional_member(doc, "name", "")) sp.name = text(*n, "/name");

  GroupTable groups(member(doc, "groups", ""));
  const Json& cj = member(doc, "complexes", "");
  if (!cj.is_object()) schema_error("/complexes", "expected an object of named complexes");
  std::map<std::string, CellComplex> complexes;
  for (auto it = cj.begin(); it != cj.end(); ++it) complexes.emplace(it.key(), parse_complex(it.value(), at("/complexes", it.key())));

  const Json& strata = array(member(doc, "strata", ""), "/strata");
  if (strata.empty()) schema_error("/strata", "at least the open stratum is required");
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::string p = at("/strata", i);
    Stratum s;
    s.name = text(member(strata[i], "name", p), at(p, "name"));
    if (!by_name.emplace(s.name, i).second) schema_error(at(p, "name"), "duplicate stratum name '" + s.name + "'");
    s.group = groups.get(text(member(strata[i], "group", p), at(p, "group")), at(p, "group"));
    const std::string cname = text(member(strata[i], "complex", p), at(p, "complex"));
    auto c = complexes.find(cname);
    if (c == complexes.end()) schema_error(at(p, "complex"), "unknown complex '" + cname + "'");
    s.complex = c->second;
    if (const Json* w = optional_member(strata[i], "fixed_point_weight", p)) s.fixed_point_weight = small_integer(*w, at(p, "fixed_point_weight"));
    sp.strata.push_back(std::move(s));
  }
  // inclusions and triangle maps need every stratum's group
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::string p = at("/strata", i);
    Stratum& s = sp.strata[i];
    if (const Json* inc = optional_member(strata[i], "inclusion", p)) {
      if (i == 0) schema_error(at(p, "inclusion"), "the open stratum has no inclusion");
      s.inclusion = parse_inclusion(*inc, s.group, sp.strata[0].group, at(p, "inclusion"));
    }
    if (const Json* over = optional_member(strata[i], "over", p)) {
      for (std::size_t t = 0; t < array(*over, at(p, "over")).size(); ++t) {
        const std::string tp = at(at(p, "over"), t);
        const std::string deeper = text(member((*over)[t], "deeper", tp), at(tp, "deeper"));
        auto d = by_name.find(deeper);
        if (d == by_name.end()) schema_error(at(tp, "deeper"), "unknown stratum '" + deeper + "'");
        TriangleMap tri;
        tri.deeper = d->second;
        const Json& cells = array(member((*over)[t], "cells", tp), at(tp, "cells"));
        for (std::size_t k = 0; k < cells.size(); ++k) {
          const std::string kp = at(at(tp, "cells"), k);
          if (!cells[k].is_array() || cells[k].size() != 2) schema_error(kp, "triangle entry must be [cell, deeper cell]");
          const std::size_t from = index(cells[k][0], at(kp, 0)), to = index(cells[k][1], at(kp, 1));
          if (from >= s.complex.size()) schema_error(at(kp, 0), "cell id " + std::to_string(from) + " does not name a cell of " + s.name);
          if (to >= sp.strata[d->second].complex.size()) schema_error(at(kp, 1), "cell id " + std::to_string(to) + " does not name a cell of " + deeper);
          tri.cells.emplace(from, to);
        }
        if (const Json* inc = optional_member((*over)[t], "inclusion", tp))
          tri.inclusion = parse_inclusion(*inc, sp.strata[d->second].group, s.group, at(tp, "inclusion"));
        s.over.push_back(std::move(tri));
      }
    }
  }

  auto stratum_ref = [&](const Json& j, const std::string& p, bool allow_open) -> std::size_t {
    const std::string name = text(member(j, "stratum", p), at(p, "stratum"));
    auto it = by_name.find(name);
    if (it == by_name.end()) schema_error(at(p, "stratum"), "unknown stratum '" + name + "'");
    if (!allow_open && it->second == 0) schema_error(at(p, "stratum"), "the open stratum has no face");
    return it->second;
  };
  const std::size_t total_size = sp.strata[0].complex.size();
  if (const Json* faces = optional_member(doc, "faces", ""))
    for (std::size_t f = 0; f < array(*faces, "/faces").size(); ++f) {
      const std::string p = at("/faces", f);
      Stratum& s = sp.strata[stratum_ref((*faces)[f], p, false)];
      const Json& cells = array(member((*faces)[f], "cells", p), at(p, "cells"));
      for (std::size_t k = 0; k < cells.size(); ++k) {
        const std::size_t id = index(cells[k], at(at(p, "cells"), k));
        if (id >= total_size) schema_error(at(at(p, "cells"), k), "face cell id " + std::to_string(id) + " does not name a cell of the total complex");
        s.face.push_back(id);
      }
    }
  if (const Json* fibs = optional_member(doc, "fibrations", ""))
    for (std::size_t f = 0; f < array(*fibs, "/fibrations").size(); ++f) {
      const std::string p = at("/fibrations", f);
      Stratum& s = sp.strata[stratum_ref((*fibs)[f], p, false)];
      const Json& map = array(member((*fibs)[f], "map", p), at(p, "map"));
      for (std::size_t k = 0; k < map.size(); ++k) {
        const std::string kp = at(at(p, "map"), k);
        if (!map[k].is_array() || map[k].size() != 3) schema_error(kp, "fibration entry must be [face cell, base cell, sign]");
        const std::size_t from = index(map[k][0], at(kp, 0)), to = index(map[k][1], at(kp, 1));
        const long sign = small_integer(map[k][2], at(kp, 2));
        if (from >= total_size) schema_error(at(kp, 0), "cell id " + std::to_string(from) + " does not name a cell of the total complex");
        if (to >= s.complex.size()) schema_error(at(kp, 1), "cell id " + std::to_string(to) + " does not name a cell of " + s.name);
        if (!s.fibration.emplace(from, CellImage{to, static_cast<int>(sign)}).second) schema_error(kp, "cell " + std::to_string(from) + " is mapped twice");
      }
    }
  if (const Json* mons = optional_member(doc, "monodromy", ""))
    for (std::size_t f = 0; f < array(*mons, "/monodromy").size(); ++f) {
      const std::string p = at("/monodromy", f);
      Stratum& s = sp.strata[stratum_ref((*mons)[f], p, true)];
      Monodromy m;
      m.group = groups.get(text(member((*mons)[f], "group", p), at(p, "group")), at(p, "group"));
      if (m.group.kind() != GroupDesc::Kind::extension) schema_error(at(p, "group"), "monodromy group must be an extension");
      if (!(m.group.extension_data().normal == s.group))
        schema_error(at(p, "group"), "monodromy extension must have normal part " + s.group.name());
      const std::size_t order = m.group.extension_data().quotient.order;
      const Json& el = array(member((*mons)[f], "elements", p), at(p, "elements"));
      if (el.size() != s.complex.size()) schema_error(at(p, "elements"), "need one list of elements per cell of " + s.name);
      for (std::size_t c = 0; c < el.size(); ++c) {
        const std::string cp = at(at(p, "elements"), c);
        if (array(el[c], cp).size() != s.complex.cell(c).boundary.size())
          schema_error(cp, "need one element per boundary entry of cell " + std::to_string(c));
        m.element.emplace_back();
        for (std::size_t e = 0; e < el[c].size(); ++e) {
          const std::size_t x = index(el[c][e], at(cp, e));
          if (x >= order) schema_error(at(cp, e), "quotient element out of range");
          m.element.back().push_back(x);
        }
      }
      if (s.monodromy) schema_error(p, "stratum " + s.name + " has two monodromy entries");
      s.monodromy = std::move(m);
    }
  return sp;
}

/// Canonical JSON text of a space; parse_space followed by serialize_space is
/// the identity on canonical text.
inline std::string serialize_space(const ResolutionSpace& sp) {
  using namespace detail;
  GroupWriter groups;
  Json complexes = Json::object();
  std::vector<std::pair<std::string, const CellComplex*>> named;
  auto complex_name = [&](const Stratum& s) {
    for (const auto& [n, c] : named)
      if (c->cells() == s.complex.cells()) return n;
    std::string n = s.name;
    while (complexes.contains(n)) n += "'";
    named.emplace_back(n, &s.complex);
    complexes[n] = complex_json(s.complex);
    return n;
  };
  Json strata = Json::array();
  for (const Stratum& s : sp.strata) {
    Json j;
    j["name"] = s.name;
    j["group"] = groups.name(s.group);
    j["complex"] = complex_name(s);
    if (s.inclusion) j["inclusion"] = inclusion_json(*s.inclusion);
    if (s.fixed_point_weight) j["fixed_point_weight"] = str(*s.fixed_point_weight);
    if (!s.over.empty()) {
      Json over = Json::array();
      for (const auto& t : s.over) {
        Json tj;
        tj["deeper"] = sp.strata.at(t.deeper).name;
        Json cells = Json::array();
        for (const auto& [a, b] : t.cells) cells.push_back(Json::array({str(a), str(b)}));
        tj["cells"] = std::move(cells);
        if (t.inclusion) tj["inclusion"] = inclusion_json(*t.inclusion);
        over.push_back(std::move(tj));
      }
      j["over"] = std::move(over);
    }
    strata.push_back(std::move(j));
  }
  Json faces = Json::array(), fibrations = Json::array(), monodromy = Json::array();
  for (std::size_t i = 0; i < sp.strata.size(); ++i) {
    const Stratum& s = sp.strata[i];
    if (i > 0) {
      Json cells = Json::array();
      for (std::size_t c : s.face) cells.push_back(str(c));
      faces.push_back(Json{{"stratum", s.name}, {"cells", std::move(cells)}});
      Json map = Json::array();
      for (const auto& [from, im] : s.fibration) map.push_back(Json::array({str(from), str(im.cell), str(static_cast<long>(im.sign))}));
      fibrations.push_back(Json{{"stratum", s.name}, {"map", std::move(map)}});
    }
    if (s.monodromy) {
      Json el = Json::array();
      for (const auto& row : s.monodromy->element) {
        Json r = Json::array();
        for (std::size_t x : row) r.push_back(str(x));
        el.push_back(std::move(r));
      }
      monodromy.push_back(Json{{"stratum", s.name}, {"group", groups.name(s.monodromy->group)}, {"elements", std::move(el)}});
    }
  }
  Json doc;
  doc["name"] = sp.name;
  doc["groups"] = groups.json();
  doc["complexes"] = std::move(complexes);
  doc["strata"] = std::move(strata);
  doc["faces"] = std::move(faces);
  doc["fibrations"] = std::move(fibrations);
  doc["monodromy"] = std::move(monodromy);
  return doc.dump(2) + "\n";
}

}  // namespace equires::io
