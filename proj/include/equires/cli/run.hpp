#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "equires/io/space_json.hpp"
#include "equires/theories/localization.hpp"

namespace equires::cli {

enum class Format { text, csv, jsonl };

inline constexpr int max_parameter = 64;

struct JobSpec {
  std::string source;  ///< builder name or JSON file path
  bool validate = false;
  std::optional<int> hg;
  std::optional<long> hdl;
  std::optional<long> k;
  std::optional<std::pair<int, long>> chern;
  std::optional<int> ab;
  Format format = Format::text;
  std::optional<std::string> emit;  ///< write the space as JSON here ("-" for stdout)
};

struct Row {
  std::string computation;
  std::vector<std::pair<std::string, std::string>> fields;
};

/// Group names as printed by GroupDesc::name: 1, Zn, Dn, S3, S4, S1, Tn, and
/// products joined by 'x'.
inline GroupDesc group_by_name(const std::string& name) {
  if (auto x = name.find('x'); x != std::string::npos) {
    std::vector<GroupDesc> factors;
    std::size_t start = 0;
    while (true) {
      std::size_t end = name.find('x', start);
      factors.push_back(group_by_name(name.substr(start, end == std::string::npos ? std::string::npos : end - start)));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    return GroupDesc::product(std::move(factors));
  }
  auto number = [&](std::size_t from) -> long {
    std::string digits = name.substr(from);
    if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::parse, "unknown group '" + name + "'");
    return std::stol(digits);
  };
  if (name == "1") return GroupDesc::finite(trivial_group());
  if (name == "S1") return GroupDesc::torus(1);
  if (name.empty()) fail(ErrorKind::parse, "empty group name");
  switch (name[0]) {
    case 'Z': return GroupDesc::finite(cyclic_group(number(1)));
    case 'D': return GroupDesc::finite(dihedral_group(number(1)));
    case 'S': return GroupDesc::finite(symmetric_group(number(1)));
    case 'T': return GroupDesc::torus(static_cast<std::size_t>(number(1)));
  }
  fail(ErrorKind::parse, "unknown group '" + name + "'");
}

inline const std::vector<std::string>& builder_names() {
  static const std::vector<std::string> names{"appendix-sphere", "appendix-sphere-z2", "mobius", "trivial:<group>:<complex>",
                                              "free:<group>:<complex>"};
  return names;
}

/// Builder name or path to a JSON description.
inline ResolutionSpace load_space(const std::string& source) {
  if (source == "appendix-sphere") return build_appendix_sphere();
  if (source == "appendix-sphere-z2") return build_appendix_sphere_z2();
  if (source == "mobius") return build_mobius_example();
  for (const std::string kind : {"trivial", "free"}) {
    if (source.rfind(kind + ":", 0) != 0) continue;
    const std::string rest = source.substr(kind.size() + 1);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) fail(ErrorKind::parse, "builder " + kind + " needs <group>:<complex>");
    GroupDesc g = group_by_name(rest.substr(0, colon));
    CellComplex c;
    try {
      c = complexes::by_name(rest.substr(colon + 1));
    } catch (const Error& e) {
      fail(ErrorKind::parse, e.what());
    }
    ResolutionSpace sp = kind == "trivial" ? build_trivial_action(g, c) : build_free_action(g, c);
    sp.name = source;
    return sp;
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) fail(ErrorKind::parse, "'" + source + "' is neither a builder nor a readable file");
  std::stringstream buf;
  buf << in.rdbuf();
  ResolutionSpace sp = io::parse_space(buf.str());
  if (sp.name.empty()) sp.name = source;
  return sp;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

inline std::string issue_text(const ValidationIssue& i) {
  std::string s = i.code;
  if (!i.stratum.empty()) s += " stratum=" + i.stratum;
  if (!i.cells.empty()) {
    std::vector<std::string> c;
    for (std::size_t x : i.cells) c.push_back(std::to_string(x));
    s += " cells=" + join(c, " ");
  }
  return s + ": " + i.message;
}

inline void check_parameter(long v, const std::string& field) {
  if (v < 0 || v > max_parameter)
    fail(ErrorKind::invalid_argument, field + " must lie in [0, " + std::to_string(max_parameter) + "], got " + std::to_string(v));
}

/// Runs every requested computation in a fixed order.
inline std::vector<Row> compute(const ResolutionSpace& sp, const JobSpec& job) {
  std::vector<Row> rows;
  ValidationReport report = validate_resolution(sp);
  if (job.validate) {
    rows.push_back({"validate", {{"status", report.ok() ? "ok" : "invalid"}, {"issues", std::to_string(report.issues.size())}}});
    for (const auto& i : report.issues) rows.push_back({"validate", {{"issue", issue_text(i)}}});
  }
  const bool computing = job.hg || job.hdl || job.k || job.chern || job.ab;
  if (!report.ok()) {
    if (computing) rows.push_back({"error", {{"message", "invalid space: " + issue_text(report.issues.front())}}});
    return rows;
  }
  if (job.hg) {
    TheoryResult r = equivariant_cohomology(sp, *job.hg, false);
    for (std::size_t q = 0; q < r.dims.size(); ++q) rows.push_back({"hg", {{"D", std::to_string(*job.hg)}, {"q", std::to_string(q)}, {"dim", std::to_string(r.dims[q])}}});
  }
  if (job.hdl) {
    TheoryResult r = delocalized_cohomology(sp, *job.hdl, false);
    const std::string w = std::to_string(*job.hdl);
    for (std::size_t q = 0; q < r.dims.size(); ++q) rows.push_back({"hdl", {{"W", w}, {"degree", std::to_string(q)}, {"dim", std::to_string(r.dims[q])}}});
    rows.push_back({"hdl", {{"W", w}, {"parity", "even"}, {"dim", std::to_string(r.even)}}});
    rows.push_back({"hdl", {{"W", w}, {"parity", "odd"}, {"dim", std::to_string(r.odd)}}});
  }
  if (job.k) {
    KTheory kt = k_theory(sp, *job.k, false);
    const std::string w = std::to_string(*job.k);
    std::vector<std::string> tf;
    for (const auto& f : kt.result.invariant_factors) tf.push_back(to_string(f));
    rows.push_back({"k", {{"W", w}, {"group", "K0"}, {"rank", std::to_string(kt.result.even)}, {"torsion", tf.empty() ? "none" : join(tf, " ")}}});
    rows.push_back({"k", {{"W", w}, {"group", "K1"}, {"rank", "0"}, {"note", kt.result.note}}});
    for (std::size_t g = 0; g < kt.generators.size(); ++g) {
      std::vector<std::string> parts;
      for (const auto& cv : component_values(sp, kt.generators[g])) parts.push_back(cv.stratum + "@" + std::to_string(cv.vertex) + "=" + cv.value.to_string());
      rows.push_back({"k", {{"W", w}, {"generator", std::to_string(g)}, {"values", join(parts, "; ")}}});
    }
  }
  if (job.chern) {
    const auto [d, w] = *job.chern;
    KTheory kt = k_theory(sp, w, false);
    TheoryResult dl = delocalized_cohomology(sp, w, false);
    const std::size_t ch = chern_rank(sp, kt);
    TriangleReport tri = chern_triangle_check(sp, d, w);
    const std::string ds = std::to_string(d), ws = std::to_string(w);
    rows.push_back({"chern", {{"D", ds}, {"W", ws}, {"k0_rank", std::to_string(kt.result.even)}, {"chern_rank", std::to_string(ch)},
                              {"hdl_even", std::to_string(dl.even)}, {"bijective", ch == kt.result.even && ch == dl.even ? "yes" : "no"}}});
    rows.push_back({"chern", {{"D", ds}, {"W", ws}, {"triangle", tri.passed ? "pass" : "fail"}, {"checked", std::to_string(tri.checked)}}});
    for (const auto& f : tri.failures) rows.push_back({"chern", {{"D", ds}, {"W", ws}, {"failure", f}}});
  }
  if (job.ab) {
    for (const auto& r : fixed_point_pushforward(sp, *job.ab)) {
      std::vector<std::string> vals;
      for (std::size_t i = 0; i < r.values.size(); ++i) vals.push_back(sp.strata[i + 1].name + "=" + r.values[i].to_string());
      rows.push_back({"ab", {{"D", std::to_string(*job.ab)}, {"q", std::to_string(r.degree)}, {"values", join(vals, "; ")}, {"pushforward", r.result.to_string()}}});
    }
  }
  return rows;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void write_rows(const std::vector<Row>& rows, Format format, std::ostream& out) {
  for (const Row& r : rows) {
    switch (format) {
      case Format::text: {
        out << r.computation;
        for (const auto& [k, v] : r.fields) out << "  " << k << "=" << v;
        out << "\n";
        break;
      }
      case Format::csv: {
        out << csv_field(r.computation);
        for (const auto& [k, v] : r.fields) out << "," << csv_field(k) << "," << csv_field(v);
        out << "\n";
        break;
      }
      case Format::jsonl: {
        io::Json j;
        j["computation"] = r.computation;
        for (const auto& [k, v] : r.fields) j[k] = v;
        out << j.dump() << "\n";
        break;
      }
    }
  }
}

/// Exit codes: 0 success, 1 parse or argument error, 2 invalid space,
/// 3 request outside the modeled scope.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    if (job.hg) check_parameter(*job.hg, "--hg D");
    if (job.hdl) check_parameter(*job.hdl, "--hdl W");
    if (job.k) check_parameter(*job.k, "--k W");
    if (job.chern) {
      check_parameter(job.chern->first, "--chern D");
      check_parameter(job.chern->second, "--chern W");
    }
    if (job.ab) check_parameter(*job.ab, "--ab D");
    ResolutionSpace sp = load_space(job.source);
    if (job.emit) {
      const std::string text = io::serialize_space(sp);
      if (*job.emit == "-") {
        out << text;
      } else {
        std::ofstream f(*job.emit, std::ios::binary);
        if (!f) fail(ErrorKind::parse, "cannot write '" + *job.emit + "'");
        f << text;
      }
    }
    std::vector<Row> rows = compute(sp, job);
    write_rows(rows, job.format, out);
    for (const Row& r : rows)
      if (r.computation == "error" || (r.computation == "validate" && r.fields.front().second == "invalid")) return 2;
    return 0;
  } catch (const Error& e) {
    err << "equires: " << to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::parse:
      case ErrorKind::invalid_argument: return 1;
      case ErrorKind::out_of_scope: return 3;
      default: return 2;
    }
  }
}

}  // namespace equires::cli
