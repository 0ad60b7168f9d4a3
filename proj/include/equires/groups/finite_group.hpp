#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "equires/core/error.hpp"
#include "equires/core/rational.hpp"

namespace equires {

/// A finite group given by its multiplication table, with a rational character
/// table. Irreducible rational characters may have norm > 1 (a Galois orbit of
/// complex characters, e.g. the 2-dimensional rational irreducible of Z/3); the
/// norm <chi, chi> is stored alongside each row.
struct FiniteGroup {
  std::size_t order = 1;
  std::vector<std::vector<std::size_t>> table{{0}};
  std::size_t identity = 0;
  std::vector<std::size_t> inverse{0};
  std::vector<std::vector<std::size_t>> classes{{0}};
  std::vector<std::size_t> class_of{0};
  std::vector<std::vector<Rational>> characters{{Rational(1)}};  ///< [irrep][class]
  std::vector<Integer> norms{Integer(1)};
  std::vector<std::string> names{"triv"};
  std::string builtin = "cyclic";  ///< empty for user-supplied tables
  long builtin_param = 1;

  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  std::size_t num_irreducibles() const { return characters.size(); }
  const Rational& character(std::size_t irrep, std::size_t element) const {
    return characters[irrep][class_of[element]];
  }
  Integer dimension(std::size_t irrep) const { return characters[irrep][class_of[identity]].get_num(); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order == b.order && a.table == b.table && a.characters == b.characters &&
           a.names == b.names && a.classes == b.classes;
  }
};

namespace detail {


inline long euler_phi(long n) {
  long r = 0;
  for (long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++r;
  return r;
}

inline long moebius(long n) {
  long m = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

/// Ramanujan sum c_d(k): the sum of k-th powers of the primitive d-th roots of unity.
inline long ramanujan_sum(long d, long k) {
  long g = std::gcd(((k % d) + d) % d, d);
  return moebius(d / g) * euler_phi(d) / euler_phi(d / g);
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace detail

/// Fills identity, inverses and conjugacy classes from the table, and checks
/// the group axioms. Throws on a table that is not a group.
inline void complete_group_structure(FiniteGroup& g) {
  const std::size_t n = g.order;
  if (n == 0 || g.table.size() != n) fail(ErrorKind::invalid_argument, "multiplication table has wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.table[a].size() != n) fail(ErrorKind::invalid_argument, "multiplication table row " + std::to_string(a) + " has wrong size");
    for (std::size_t b = 0; b < n; ++b)
      if (g.table[a][b] >= n) fail(ErrorKind::invalid_argument, "multiplication table entry out of range");
  }
  std::size_t e = n;
  for (std::size_t a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b) ok = g.table[a][b] == b && g.table[b][a] == b;
    if (ok) e = a;
  }
  if (e == n) fail(ErrorKind::invalid_argument, "multiplication table has no identity");
  g.identity = e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          fail(ErrorKind::invalid_argument, "multiplication table is not associative at (" + std::to_string(a) + "," +
                                                std::to_string(b) + "," + std::to_string(c) + ")");
  g.inverse.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.table[a][b] == e && g.table[b][a] == e) g.inverse[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (g.inverse[a] == n) fail(ErrorKind::invalid_argument, "element " + std::to_string(a) + " has no inverse");
  g.classes.clear();
  g.class_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (g.class_of[a] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t c = g.table[g.table[x][a]][g.inverse[x]];
      if (g.class_of[c] == n) {
        g.class_of[c] = g.classes.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    g.classes.push_back(std::move(cls));
  }
}

/// Verifies the rational character table: orthogonality with the stored norms
/// and completeness (sum of dim^2 / norm equals the group order).
inline void verify_character_table(const FiniteGroup& g) {
  const std::size_t k = g.characters.size();
  if (g.norms.size() != k || g.names.size() != k) fail(ErrorKind::invalid_argument, "character table metadata size mismatch");
  for (std::size_t i = 0; i < k; ++i)
    if (g.characters[i].size() != g.classes.size()) fail(ErrorKind::invalid_argument, "character row has wrong length");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Rational ip = 0;
      for (std::size_t c = 0; c < g.classes.size(); ++c)
        ip += Rational(static_cast<long>(g.classes[c].size())) * g.characters[i][c] * g.characters[j][c];
      ip /= static_cast<long>(g.order);
      Rational expect = i == j ? Rational(g.norms[i]) : Rational(0);
      if (ip != expect)
        fail(ErrorKind::invalid_argument, "character table fails orthogonality at rows " + std::to_string(i) + "," +
                                              std::to_string(j) + ": <chi_i,chi_j> = " + to_string(ip));
    }
  Rational total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (g.norms[i] <= 0) fail(ErrorKind::invalid_argument, "character norm must be positive");
    Rational d = g.characters[i][g.class_of[g.identity]];
    total += d * d / Rational(g.norms[i]);
  }
  if (total != static_cast<long>(g.order))
    fail(ErrorKind::invalid_argument, "character table is incomplete: sum dim^2/norm = " + to_string(total));
}

/// Builds a finite group from a table and per-element character rows (rational values).
inline FiniteGroup make_finite_group(std::vector<std::vector<std::size_t>> table,
                                     const std::vector<std::vector<Rational>>& element_characters,
                                     std::vector<std::string> names = {}) {
  FiniteGroup g;
  g.order = table.size();
  g.table = std::move(table);
  g.builtin.clear();
  g.builtin_param = 0;
  complete_group_structure(g);
  g.characters.clear();
  g.norms.clear();
  for (std::size_t i = 0; i < element_characters.size(); ++i) {
    const auto& row = element_characters[i];
    if (row.size() != g.order) fail(ErrorKind::invalid_argument, "character row " + std::to_string(i) + " must list one value per element");
    std::vector<Rational> per_class(g.classes.size());
    for (std::size_t c = 0; c < g.classes.size(); ++c) {
      per_class[c] = row[g.classes[c].front()];
      for (std::size_t x : g.classes[c])
        if (row[x] != per_class[c])
          fail(ErrorKind::invalid_argument, "character row " + std::to_string(i) + " is not a class function");
    }
    Rational ip = 0;
    for (std::size_t x = 0; x < g.order; ++x) ip += row[x] * row[x];
    ip /= static_cast<long>(g.order);
    if (ip.get_den() != 1) fail(ErrorKind::invalid_argument, "character row " + std::to_string(i) + " has non-integral norm");
    g.characters.push_back(std::move(per_class));
    g.norms.push_back(ip.get_num());
  }
  if (names.empty())
    for (std::size_t i = 0; i < g.characters.size(); ++i) names.push_back("chi" + std::to_string(i));
  g.names = std::move(names);
  verify_character_table(g);
  return g;
}

/// Z/n with its rational irreducibles, one per divisor d of n (character = Ramanujan sum c_d).
inline FiniteGroup cyclic_group(long n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) table[a][b] = static_cast<std::size_t>((a + b) % n);
  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> names;
  for (long d : detail::divisors(n)) {
    std::vector<Rational> row(n);
    for (long k = 0; k < n; ++k) row[k] = detail::ramanujan_sum(d, k);
    rows.push_back(std::move(row));
    names.push_back(d == 1 ? "triv" : d == 2 ? "sgn" : "rho" + std::to_string(d));
  }
  FiniteGroup g = make_finite_group(std::move(table), rows, std::move(names));
  g.builtin = "cyclic";
  g.builtin_param = n;
  return g;
}

inline FiniteGroup trivial_group() { return cyclic_group(1); }

/// Dihedral group of order 2n; element r^a s^b has index a + n*b.
inline FiniteGroup dihedral_group(long n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "dihedral parameter must be positive");
  const long order = 2 * n;
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (long x = 0; x < order; ++x)
    for (long y = 0; y < order; ++y) {
      long a = x % n, b = x / n, c = y % n, e = y / n;
      long rot = ((a + (b ? -c : c)) % n + n) % n;
      table[x][y] = static_cast<std::size_t>(rot + n * ((b + e) % 2));
    }
  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> names;
  auto one_dim = [&](long on_r, long on_s, const std::string& name) {
    std::vector<Rational> row(order);
    for (long x = 0; x < order; ++x) {
      long a = x % n, b = x / n;
      long v = (a % 2 && on_r < 0 ? -1 : 1) * (b && on_s < 0 ? -1 : 1);
      row[x] = v;
    }
    rows.push_back(std::move(row));
    names.push_back(name);
  };
  one_dim(1, 1, "triv");
  one_dim(1, -1, "sgn");
  if (n % 2 == 0) {
    one_dim(-1, 1, "alt");
    one_dim(-1, -1, "alt_sgn");
  }
  for (long d : detail::divisors(n)) {
    if (d < 3) continue;
    std::vector<Rational> row(order);
    for (long x = 0; x < order; ++x) row[x] = x / n ? 0 : detail::ramanujan_sum(d, x % n);
    rows.push_back(std::move(row));
    names.push_back("rho" + std::to_string(d));
  }
  FiniteGroup g = make_finite_group(std::move(table), rows, std::move(names));
  g.builtin = "dihedral";
  g.builtin_param = n;
  return g;
}

/// Symmetric group S_3 or S_4 (permutations in lexicographic order, composition p*q = p o q).
inline FiniteGroup symmetric_group(long n) {
  if (n != 3 && n != 4) fail(ErrorKind::unsupported_group, "unsupported group: built-in symmetric groups are S3 and S4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t order = perms.size();
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = index_of(c);
    }
  auto cycle_type = [&](const std::vector<int>& q) {
    std::vector<int> seen(n, 0), lens;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = q[j]) {
        seen[j] = 1;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
  };
  // cycle types in a fixed order with the character values on each
  std::vector<std::vector<int>> types;
  std::vector<std::vector<long>> values;
  std::vector<std::string> names;
  if (n == 3) {
    types = {{1, 1, 1}, {2, 1}, {3}};
    values = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
    names = {"triv", "sgn", "std"};
  } else {
    types = {{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}};
    values = {{1, 1, 1, 1, 1}, {1, -1, 1, 1, -1}, {2, 0, 2, -1, 0}, {3, 1, -1, 0, -1}, {3, -1, -1, 0, 1}};
    names = {"triv", "sgn", "two", "std", "std_sgn"};
  }
  std::vector<std::vector<Rational>> rows(values.size(), std::vector<Rational>(order));
  for (std::size_t x = 0; x < order; ++x) {
    auto t = cycle_type(perms[x]);
    std::size_t ti = static_cast<std::size_t>(std::find(types.begin(), types.end(), t) - types.begin());
    for (std::size_t i = 0; i < values.size(); ++i) rows[i][x] = values[i][ti];
  }
  FiniteGroup g = make_finite_group(std::move(table), rows, std::move(names));
  g.builtin = "symmetric";
  g.builtin_param = n;
  return g;
}

/// Decomposes a class function (values per class) into rational irreducibles.
/// Throws non_integral when a multiplicity is not an integer.
inline std::vector<Integer> decompose_class_function(const FiniteGroup& g, const std::vector<Rational>& values) {
  std::vector<Integer> mult(g.num_irreducibles());
  for (std::size_t i = 0; i < g.num_irreducibles(); ++i) {
    Rational ip = 0;
    for (std::size_t c = 0; c < g.classes.size(); ++c)
      ip += Rational(static_cast<long>(g.classes[c].size())) * values[c] * g.characters[i][c];
    ip /= Rational(static_cast<long>(g.order)) * Rational(g.norms[i]);
    if (ip.get_den() != 1)
      fail(ErrorKind::non_integral, "non-integral decomposition: multiplicity of " + g.names[i] + " is " + to_string(ip));
    mult[i] = ip.get_num();
  }
  return mult;
}

}  // namespace equires
