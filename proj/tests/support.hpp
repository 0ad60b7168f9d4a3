#pragma once

// Test-side generators and oracles. The oracles avoid the library's linear
// algebra: ranks are computed modulo a large prime with plain 64-bit arithmetic.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "equires/cochain/les.hpp"
#include "equires/cochain/space_complexes.hpp"
#include "equires/resolution/space.hpp"

namespace testing {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("EQUIRES_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261018;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(seed() * 1000003ULL + salt); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string data_dir() {
  const char* d = std::getenv("EQUIRES_DATA_DIR");
  return d ? d : "data";
}

// ---------------------------------------------------------------------------
// rank modulo p

constexpr std::int64_t prime = 1000000007;

inline std::int64_t mod(std::int64_t a) {
  a %= prime;
  return a < 0 ? a + prime : a;
}

inline std::int64_t power(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b = mod(b);
  while (e) {
    if (e & 1) r = static_cast<std::int64_t>((static_cast<__int128>(r) * b) % prime);
    b = static_cast<std::int64_t>((static_cast<__int128>(b) * b) % prime);
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && mod(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const std::int64_t inv = power(m[r][c], prime - 2);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || mod(m[i][c]) == 0) continue;
      const std::int64_t f = static_cast<std::int64_t>((static_cast<__int128>(mod(m[i][c])) * inv) % prime);
      for (std::size_t k = c; k < cols; ++k)
        m[i][k] = mod(m[i][k] - static_cast<std::int64_t>((static_cast<__int128>(f) * mod(m[r][k])) % prime));
    }
    ++r;
  }
  return r;
}

/// Betti numbers straight from the cell list.
inline std::vector<std::size_t> betti(const equires::CellComplex& c) {
  const int top = c.dimension();
  std::vector<std::vector<std::size_t>> ids(static_cast<std::size_t>(top + 1));
  std::vector<std::size_t> pos(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto& v = ids[static_cast<std::size_t>(c.cells()[i].dim)];
    pos[i] = v.size();
    v.push_back(i);
  }
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);  // ranks[q] = rank of boundary from q-cells
  for (int q = 1; q <= top; ++q) {
    std::vector<std::vector<std::int64_t>> m(ids[static_cast<std::size_t>(q - 1)].size(),
                                             std::vector<std::int64_t>(ids[static_cast<std::size_t>(q)].size(), 0));
    for (std::size_t k = 0; k < ids[static_cast<std::size_t>(q)].size(); ++k)
      for (const auto& inc : c.cells()[ids[static_cast<std::size_t>(q)][k]].boundary) m[pos[inc.face]][k] += inc.coeff;
    ranks[static_cast<std::size_t>(q)] = rank_mod_p(m);
  }
  std::vector<std::size_t> b;
  for (int q = 0; q <= top; ++q) {
    const std::size_t n = ids[static_cast<std::size_t>(q)].size();
    b.push_back(n - ranks[static_cast<std::size_t>(q)] - ranks[static_cast<std::size_t>(q + 1)]);
  }
  return b;
}

// ---------------------------------------------------------------------------
// generators

/// Random simplicial complex of dimension <= 2 on a few vertices; edges and
/// triangles oriented by vertex order.
inline equires::CellComplex random_simplicial(Rng& rng) {
  using namespace equires;
  const std::size_t n = uniform(rng, 1, 6);
  std::vector<Cell> cells(n, Cell{0, {}});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (uniform(rng, 0, 99) < 60) {
        edge[{a, b}] = cells.size();
        cells.push_back(Cell{1, {{b, 1}, {a, -1}}});
      }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (edge.count({a, b}) && edge.count({b, c}) && edge.count({a, c}) && uniform(rng, 0, 99) < 50)
          cells.push_back(Cell{2, {{edge[{b, c}], 1}, {edge[{a, c}], -1}, {edge[{a, b}], 1}}});
  return CellComplex(std::move(cells));
}

/// A mix of named CW complexes and random simplicial ones.
inline equires::CellComplex random_complex(Rng& rng) {
  using namespace equires;
  switch (uniform(rng, 0, 7)) {
    case 0: return complexes::circle();
    case 1: return complexes::sphere();
    case 2: return complexes::torus(3);
    case 3: return complexes::polygon(uniform(rng, 2, 6));
    case 4: return complexes::disjoint_union(complexes::circle(), complexes::disk(uniform(rng, 2, 5)));
    default: return random_simplicial(rng);
  }
}

/// Two singular strata over a disk: an edge stratum E (isotropy S1) whose face
/// is one boundary edge, and a corner stratum P (isotropy T2) at one endpoint
/// of that edge, with the triangle E -> P.
inline equires::ResolutionSpace random_two_strata(Rng& rng) {
  using namespace equires;
  const std::size_t n = uniform(rng, 3, 6);
  const std::size_t e = uniform(rng, 0, n - 1);  // edge n + e runs from e to e+1
  const std::size_t a = e, b = (e + 1) % n;
  const bool at_start = uniform(rng, 0, 1) == 0;
  GroupDesc t2 = GroupDesc::torus(2), s1 = GroupDesc::torus(1);
  ResolutionSpace s;
  s.name = "fuzz-two-strata";
  Stratum z;
  z.name = "Z";
  z.group = GroupDesc::finite(trivial_group());
  z.complex = complexes::disk(n);
  s.strata.push_back(z);
  Stratum ed;
  ed.name = "E";
  ed.group = s1;
  ed.complex = complexes::interval();
  ed.face = {a, b, n + e};
  ed.fibration = {{a, {0, 1}}, {b, {1, 1}}, {n + e, {2, 1}}};
  ed.inclusion = SubgroupInclusion::trivial(s1);
  ZMatrix w(1, 2);
  w(0, uniform(rng, 0, 1)) = 1;
  ed.over.push_back(TriangleMap{2, {{at_start ? 0u : 1u, 0}}, SubgroupInclusion::torus(2, w)});
  s.strata.push_back(ed);
  Stratum p;
  p.name = "P";
  p.group = t2;
  p.complex = complexes::point();
  p.face = {at_start ? a : b};
  p.fibration = {{at_start ? a : b, {0, 1}}};
  p.inclusion = SubgroupInclusion::trivial(t2);
  s.strata.push_back(p);
  return s;
}

inline equires::GroupDesc random_small_group(Rng& rng) {
  using namespace equires;
  switch (uniform(rng, 0, 2)) {
    case 0: return GroupDesc::finite(cyclic_group(2));
    case 1: return GroupDesc::finite(symmetric_group(3));
    default: return GroupDesc::torus(1);
  }
}

/// H_G of a trivial action: sum over 2j + k = q of dim S^j(g*)^G b_k, with the
/// invariant counts written down by hand for the groups the generators produce.
inline std::vector<std::size_t> trivial_action_dims(const equires::GroupDesc& g, const std::vector<std::size_t>& betti, int max_degree) {
  auto invariants = [&](int j) -> std::size_t {
    if (g.kind() == equires::GroupDesc::Kind::torus && g.torus_rank() == 1) return 1;
    if (g.kind() == equires::GroupDesc::Kind::finite) return j == 0 ? 1 : 0;
    throw std::logic_error("no hand count for " + g.name());
  };
  std::vector<std::size_t> out(static_cast<std::size_t>(max_degree) + 1, 0);
  for (int q = 0; q <= max_degree; ++q)
    for (int j = 0; 2 * j <= q; ++j) {
      const std::size_t k = static_cast<std::size_t>(q - 2 * j);
      if (k < betti.size()) out[static_cast<std::size_t>(q)] += invariants(j) * betti[k];
    }
  return out;
}

// ---------------------------------------------------------------------------
// long exact sequences over every upward-closed chain B c B + {k}

struct LesSummary {
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

inline LesSummary les_all_chains(const equires::SpaceComplexes& sc) {
  using namespace equires;
  LesSummary out;
  const std::size_t n = sc.parts.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<std::size_t> b;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) b.insert(i);
    if (!is_upward_closed(b, sc.order)) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (b.count(k)) continue;
      std::set<std::size_t> bk = b;
      bk.insert(k);
      if (!is_upward_closed(bk, sc.order)) continue;
      ++out.checked;
      try {
        RelativeTriple t = relative_triple(sc.total, sc.parts, b, k, sc.order);
        LesReport r = les_check(t.sub.complex, t.full.complex, t.quotient, t.f, t.g);
        for (const auto& f : r.failures) out.failures.push_back("B mask " + std::to_string(mask) + " + " + std::to_string(k) + ": " + f);
      } catch (const Error& e) {
        out.failures.push_back("B mask " + std::to_string(mask) + " + " + std::to_string(k) + ": " + e.what());
      }
    }
  }
  return out;
}

}  // namespace testing
