#include "catch2/catch_amalgamated.hpp"

#include <numeric>

#include "equires/groups/inclusion.hpp"
#include "equires/groups/invariants.hpp"
#include "equires/resolution/space.hpp"
#include "support.hpp"

using namespace equires;

namespace {

std::vector<FiniteGroup> sample_groups() {
  return {trivial_group(),     cyclic_group(2),    cyclic_group(3),    cyclic_group(4),     cyclic_group(6),
          cyclic_group(12),    dihedral_group(3),  dihedral_group(4),  dihedral_group(6),   symmetric_group(3),
          symmetric_group(4)};
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational factorial(long n) {
  Rational r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<long> divisors_of(long n) {
  std::vector<long> d;
  for (long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

long totient(long n) {
  long c = 0;
  for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

RepRingElem irr(const GroupDesc& g, std::size_t i) { return RepRingElem::irreducible(g, IrredLabel{{static_cast<long>(i)}}); }

std::size_t involution(const FiniteGroup& f) {
  for (std::size_t x = 0; x < f.order; ++x)
    if (x != f.identity && f.mul(x, x) == f.identity) return x;
  return f.identity;
}

}  // namespace

TEST_CASE("rational character tables satisfy the orthogonality relations") {
  for (const auto& g : sample_groups()) {
    CAPTURE(g.builtin, g.builtin_param);
    REQUIRE(g.characters.size() == g.norms.size());
    for (std::size_t a = 0; a < g.num_irreducibles(); ++a)
      for (std::size_t b = 0; b < g.num_irreducibles(); ++b) {
        Rational s = 0;
        for (std::size_t x = 0; x < g.order; ++x) s += g.character(a, x) * g.character(b, g.inverse[x]);
        CHECK(s == (a == b ? Rational(g.norms[a]) * static_cast<long>(g.order) : Rational(0)));
      }
    // regular representation: sum of dim^2 / norm equals the order
    Rational total = 0;
    for (std::size_t a = 0; a < g.num_irreducibles(); ++a) total += Rational(g.dimension(a) * g.dimension(a)) / Rational(g.norms[a]);
    CHECK(total == static_cast<long>(g.order));
  }
}

TEST_CASE("rational irreducibles of cyclic groups follow the divisors") {
  for (long n : {1L, 2L, 5L, 6L, 8L, 12L}) {
    FiniteGroup g = cyclic_group(n);
    CHECK(g.num_irreducibles() == divisors_of(n).size());
    std::multiset<long> dims, phis;
    for (std::size_t a = 0; a < g.num_irreducibles(); ++a) dims.insert(g.dimension(a).get_si());
    for (long d : divisors_of(n)) phis.insert(totient(d));
    CHECK(dims == phis);
  }
}

TEST_CASE("S3 and S4 have the expected irreducible dimensions") {
  std::multiset<long> s3, s4;
  FiniteGroup a = symmetric_group(3), b = symmetric_group(4);
  for (std::size_t i = 0; i < a.num_irreducibles(); ++i) s3.insert(a.dimension(i).get_si());
  for (std::size_t i = 0; i < b.num_irreducibles(); ++i) s4.insert(b.dimension(i).get_si());
  CHECK(s3 == std::multiset<long>{1, 1, 2});
  CHECK(s4 == std::multiset<long>{1, 1, 2, 3, 3});
  CHECK(dihedral_group(4).num_irreducibles() == 5);
}

TEST_CASE("make_finite_group rejects tables that are not groups") {
  CHECK_THROWS_AS(make_finite_group({{0, 1}, {0, 1}}, {{Rational(1), Rational(1)}}, {"triv"}), Error);
}

TEST_CASE("decompose_class_function recovers multiplicities") {
  FiniteGroup g = symmetric_group(3);
  std::vector<Rational> values(g.classes.size(), 0);
  // 2*triv + std
  for (std::size_t c = 0; c < g.classes.size(); ++c) values[c] = 2 * g.characters[0][c] + g.characters[2][c];
  CHECK(decompose_class_function(g, values) == std::vector<Integer>{2, 0, 1});
}

TEST_CASE("S3 tensor products") {
  GroupDesc g = GroupDesc::finite(symmetric_group(3));
  CHECK(irr(g, 2) * irr(g, 2) == irr(g, 0) + irr(g, 1) + irr(g, 2));
  CHECK(irr(g, 1) * irr(g, 1) == irr(g, 0));
  CHECK(irr(g, 1) * irr(g, 2) == irr(g, 2));
  CHECK(RepRingElem::one(g) * irr(g, 2) == irr(g, 2));
  CHECK((irr(g, 2) * irr(g, 2)).dimension() == 4);
}

TEST_CASE("tensor products preserve dimension and are commutative") {
  auto rng = testing::make_rng(11);
  for (int t = 0; t < 60; ++t) {
    GroupDesc g = testing::random_small_group(rng);
    auto labels = window_labels(g, 2);
    auto pick = [&] {
      RepRingElem e(g);
      for (int k = 0; k < 3; ++k)
        e.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], static_cast<long>(testing::uniform(rng, 0, 4)) - 2);
      return e;
    };
    RepRingElem a = pick(), b = pick();
    CHECK(a * b == b * a);
    CHECK((a * b).dimension() == a.dimension() * b.dimension());
    CHECK((a + b).dimension() == a.dimension() + b.dimension());
  }
}

TEST_CASE("torus weights multiply additively") {
  GroupDesc t = GroupDesc::torus(2);
  auto z = [&](long a, long b) { return RepRingElem::irreducible(t, IrredLabel{{a, b}}); };
  CHECK(z(1, 0) * z(0, -1) == z(1, -1));
  CHECK(z(2, 3) * z(-2, -3) == RepRingElem::one(t));
  CHECK(z(1, 2).to_string() == "z^(1,2)");
}

TEST_CASE("window sizes") {
  CHECK(window_labels(GroupDesc::torus(1), 2).size() == 5);
  CHECK(window_labels(GroupDesc::torus(2), 1).size() == 9);
  CHECK(window_labels(GroupDesc::product({GroupDesc::torus(1), GroupDesc::finite(cyclic_group(2))}), 1).size() == 6);
  CHECK(window_labels(GroupDesc::finite(symmetric_group(3)), 0).size() == 3);
  // S1 x| Z2: z^0 splits in two, each orbit {z^k, z^-k} gives one induced irreducible
  CHECK(window_labels(circle_reflection_group(), 3).size() == 5);
}

TEST_CASE("extension irreducibles have the right dimensions") {
  GroupDesc o2 = circle_reflection_group();
  std::multiset<long> dims;
  for (const auto& info : irreducibles(o2, 2)) dims.insert(info.dimension.get_si());
  CHECK(dims == std::multiset<long>{1, 1, 2, 2});
  // restriction to the circle: z^1 induced restricts to z^1 + z^-1
  auto normal = SubgroupInclusion::normal(o2);
  for (const auto& info : irreducibles(o2, 2)) {
    RepRingElem r = rep_restrict(normal, RepRingElem::irreducible(o2, info.label));
    CHECK(r.dimension() == info.dimension);
  }
}

TEST_CASE("restriction from S3 to a transposition subgroup") {
  GroupDesc s3 = GroupDesc::finite(symmetric_group(3));
  GroupDesc z2 = GroupDesc::finite(cyclic_group(2));
  const FiniteGroup& f = s3.finite_data();
  const FiniteGroup& c = z2.finite_data();
  std::vector<std::size_t> map(2);
  map[c.identity] = f.identity;
  map[1 - c.identity] = involution(f);
  auto inc = SubgroupInclusion::finite_hom(s3, z2, map);
  CHECK(rep_restrict(inc, irr(s3, 2)) == irr(z2, 0) + irr(z2, 1));
  CHECK(rep_restrict(inc, irr(s3, 1)) == irr(z2, 1));
  CHECK(rep_restrict(inc, irr(s3, 0)) == irr(z2, 0));
}

TEST_CASE("restriction preserves dimension and products") {
  GroupDesc t2 = GroupDesc::torus(2);
  auto rng = testing::make_rng(12);
  for (int t = 0; t < 40; ++t) {
    ZMatrix w(1, 2);
    w(0, 0) = static_cast<long>(testing::uniform(rng, 0, 4)) - 2;
    w(0, 1) = 1;
    auto inc = SubgroupInclusion::torus(2, w);
    auto labels = window_labels(t2, 2);
    RepRingElem a(t2), b(t2);
    a.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], 1);
    a.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], 2);
    b.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], -1);
    CHECK(rep_restrict(inc, a).dimension() == a.dimension());
    CHECK(rep_restrict(inc, a * b) == rep_restrict(inc, a) * rep_restrict(inc, b));
  }
}

TEST_CASE("invalid inclusions are rejected") {
  GroupDesc s3 = GroupDesc::finite(symmetric_group(3));
  GroupDesc z2 = GroupDesc::finite(cyclic_group(2));
  const FiniteGroup& f = s3.finite_data();
  // non-identity sent to the identity
  CHECK_THROWS_AS(SubgroupInclusion::finite_hom(s3, z2, {f.identity, f.identity}), Error);
  ZMatrix doubled(1, 1);
  doubled(0, 0) = 2;
  CHECK_THROWS_AS(SubgroupInclusion::torus(1, doubled), Error);
  CHECK_THROWS_AS(SubgroupInclusion::torus(2, doubled), Error);
}

TEST_CASE("invariant polynomial dimensions") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int j = 0; j <= 5; ++j) CHECK(InvariantBasis(GroupDesc::torus(n), j).size() == static_cast<std::size_t>(binomial(static_cast<long>(n) + j - 1, j)));
  for (int j = 0; j <= 6; ++j) {
    CHECK(InvariantBasis(circle_reflection_group(), j).size() == (j % 2 == 0 ? 1u : 0u));
    CHECK(InvariantBasis(GroupDesc::finite(symmetric_group(3)), j).size() == (j == 0 ? 1u : 0u));
    CHECK(InvariantBasis(GroupDesc::product({GroupDesc::torus(1), GroupDesc::finite(cyclic_group(2))}), j).size() == 1u);
  }
  // T2 with the swap: symmetric polynomials in two variables
  ZMatrix swap{{0, 1}, {1, 0}};
  GroupDesc sw = GroupDesc::extension(GroupDesc::torus(2), cyclic_group(2), {ZMatrix::identity(2), swap}, {});
  for (int j = 0; j <= 6; ++j) CHECK(InvariantBasis(sw, j).size() == static_cast<std::size_t>(j / 2 + 1));
}

TEST_CASE("invariant basis coordinates round-trip and reject non-invariants") {
  GroupDesc o2 = circle_reflection_group();
  InvariantBasis b2(o2, 2);
  Polynomial x2(1);
  x2.add_term(Monomial{2}, Rational(3, 2));
  CHECK(b2.polynomial(b2.coordinates(x2)) == x2);
  CHECK_THROWS_AS(InvariantBasis(o2, 1).coordinates(Polynomial::variable(1, 0)), Error);
  CHECK_THROWS_AS(InvPoly::from_polynomial(o2, Polynomial::variable(1, 0), 2), Error);
}

TEST_CASE("circle characters expand as exponentials") {
  GroupDesc t = GroupDesc::torus(1);
  for (long n = -3; n <= 3; ++n) {
    Polynomial p = character_series(t, IrredLabel{{n}}, 6);
    for (int j = 0; j <= 6; ++j) {
      Rational nj = 1;
      for (int i = 0; i < j; ++i) nj *= n;
      CHECK(p.coefficient(Monomial{j}) == nj / factorial(j));
    }
  }
  Polynomial w3 = character_series(t, IrredLabel{{3}}, 3);
  CHECK(w3.coefficient(Monomial{0}) == 1);
  CHECK(w3.coefficient(Monomial{1}) == 3);
  CHECK(w3.coefficient(Monomial{2}) == Rational(9, 2));
  CHECK(w3.coefficient(Monomial{3}) == Rational(9, 2));
}

TEST_CASE("localizing z + 1/z gives the even exponential series") {
  GroupDesc t = GroupDesc::torus(1);
  RepRingElem e = RepRingElem::irreducible(t, IrredLabel{{1}}) + RepRingElem::irreducible(t, IrredLabel{{-1}});
  Polynomial p = localize_char(t, e, 5).to_polynomial();
  Polynomial expected(1);
  expected.add_term(Monomial{0}, 2);
  expected.add_term(Monomial{2}, 1);
  expected.add_term(Monomial{4}, Rational(1, 12));
  CHECK(p == expected);
  // the same element is an invariant of the reflection extension
  GroupDesc o2 = circle_reflection_group();
  RepRingElem induced(o2);
  for (const auto& info : irreducibles(o2, 1))
    if (info.dimension == 2) induced.add_term(info.label, 1);
  CHECK(localize_char(o2, induced, 5).to_polynomial() == expected);
}

TEST_CASE("localization is a ring map on torus windows") {
  auto rng = testing::make_rng(13);
  GroupDesc t = GroupDesc::torus(2);
  auto labels = window_labels(t, 2);
  for (int k = 0; k < 30; ++k) {
    RepRingElem a(t), b(t);
    a.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], static_cast<long>(testing::uniform(rng, 1, 3)));
    b.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], -1);
    b.add_term(labels[testing::uniform(rng, 0, labels.size() - 1)], 1);
    CHECK(localize_char(t, a * b, 4) == localize_char(t, a, 4) * localize_char(t, b, 4));
    CHECK(localize_char(t, a + b, 4) == localize_char(t, a, 4) + localize_char(t, b, 4));
  }
}

TEST_CASE("finite group localization keeps only the dimension") {
  GroupDesc s3 = GroupDesc::finite(symmetric_group(3));
  InvPoly p = localize_char(s3, irr(s3, 2) + irr(s3, 1), 4);
  CHECK(p.component(0) == QVector{Rational(3)});
}

TEST_CASE("invariants of label permutations") {
  GroupDesc o2 = circle_reflection_group();
  auto labels = window_labels(GroupDesc::torus(1), 2);
  FiniteAction a = label_permutation_action(o2, labels);
  CHECK(finite_invariants(a).cols() == 3);  // z^0, z+1/z, z^2+1/z^2
  CHECK(finite_invariants_integral(a).cols() == 3);
  std::vector<IrredLabel> unstable{IrredLabel{{1}}};
  CHECK_THROWS_AS(label_permutation_action(o2, unstable), Error);
}

TEST_CASE("inconsistent actions are rejected") {
  FiniteAction a{cyclic_group(2), {QMatrix::identity(2)}};
  CHECK_THROWS_AS(finite_invariants(a), Error);
  QMatrix bad{{2, 0}, {0, 1}};
  FiniteAction b{cyclic_group(2), {QMatrix::identity(2), bad}};
  if (b.group.identity != 0) std::swap(b.matrices[0], b.matrices[1]);
  CHECK_THROWS_AS(finite_invariants(b), Error);
}

TEST_CASE("group names") {
  CHECK(GroupDesc::torus(1).name() == "S1");
  CHECK(GroupDesc::torus(2).name() == "T2");
  CHECK(GroupDesc::finite(symmetric_group(3)).name() == "S3");
  CHECK(GroupDesc::product({GroupDesc::torus(1), GroupDesc::finite(cyclic_group(2))}).name() == "S1xZ2");
}
