#include "catch2/catch_amalgamated.hpp"

#include <fstream>
#include <sstream>

#include "equires/io/space_json.hpp"
#include "equires/resolution/subdivide.hpp"
#include "equires/theories/localization.hpp"
#include "support.hpp"

using namespace equires;

namespace {

using Dims = std::vector<std::size_t>;

ResolutionSpace load(const std::string& rel) {
  std::ifstream in(testing::data_dir() + "/" + rel);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_space(buf.str());
}

Dims padded_betti(const CellComplex& c, int max_degree) {
  Dims b = testing::betti(c);
  b.resize(static_cast<std::size_t>(max_degree) + 1, 0);
  return b;
}

Polynomial poly(std::initializer_list<std::pair<int, Rational>> terms) {
  Polynomial p(1);
  for (const auto& [e, c] : terms) p.add_term(Monomial{e}, c);
  return p;
}

QVector random_vector(testing::Rng& rng, std::size_t n) {
  QVector v(n);
  for (auto& x : v) x = static_cast<long>(testing::uniform(rng, 0, 6)) - 3;
  return v;
}

}  // namespace

TEST_CASE("appendix sphere") {
  ResolutionSpace sp = build_appendix_sphere();
  CHECK(equivariant_cohomology(sp, 6).dims == Dims{1, 0, 2, 0, 2, 0, 2});
  TheoryResult dl = delocalized_cohomology(sp, 2);
  CHECK(dl.even == 9);
  CHECK(dl.odd == 0);
  KTheory k = k_theory(sp, 2);
  CHECK(k.result.even == 9);
  CHECK(k.result.invariant_factors.empty());
  CHECK(k.generators.size() == 9);
  CHECK(chern_rank(sp, k) == 9);
  TriangleReport tri = chern_triangle_check(sp, 6, 2);
  for (const auto& f : tri.failures) UNSCOPED_INFO(f);
  CHECK(tri.passed);
  CHECK(tri.checked == 10);
}

TEST_CASE("Mobius example") {
  ResolutionSpace m = build_mobius_example();
  CHECK(equivariant_cohomology(m, 5).dims == Dims{1, 1, 0, 0, 1, 1});
  TheoryResult dl = delocalized_cohomology(m, 2);
  CHECK(dl.even == 3);
  CHECK(dl.odd == 3);
  CHECK(delocalized_cohomology(m, 1).dims == Dims{2, 2});
}

TEST_CASE("trivial actions follow the convolution formula") {
  auto rng = testing::make_rng(41);
  for (int t = 0; t < 20; ++t) {
    CellComplex c = testing::random_complex(rng);
    GroupDesc g = testing::random_small_group(rng);
    const int d = static_cast<int>(testing::uniform(rng, 2, 6));
    CAPTURE(g.name(), d);
    CHECK(equivariant_cohomology(build_trivial_action(g, c), d).dims == testing::trivial_action_dims(g, testing::betti(c), d));
  }
}

TEST_CASE("free actions reduce to the cohomology of the quotient") {
  auto rng = testing::make_rng(42);
  for (int t = 0; t < 20; ++t) {
    CellComplex c = testing::random_complex(rng);
    GroupDesc g = testing::random_small_group(rng);
    CHECK(equivariant_cohomology(build_free_action(g, c), 4).dims == padded_betti(c, 4));
    TheoryResult dl = delocalized_cohomology(build_free_action(g, c), 2);
    CHECK(dl.dims == testing::betti(c));
  }
}

TEST_CASE("K-theory of a point is the windowed representation ring") {
  GroupDesc t = GroupDesc::torus(1);
  for (long w = 0; w <= 3; ++w) CHECK(k_theory(build_trivial_action(t, complexes::point()), w).result.even == static_cast<std::size_t>(2 * w + 1));
  CHECK(k_theory(build_trivial_action(GroupDesc::finite(symmetric_group(3)), complexes::point()), 1).result.even == 3);
  CHECK(k_theory(build_trivial_action(GroupDesc::finite(cyclic_group(6)), complexes::point()), 0).result.even == 4);
}

TEST_CASE("rank identity between K and delocalized cohomology") {
  std::vector<ResolutionSpace> spaces{build_appendix_sphere(), build_appendix_sphere_z2(),
                                      build_trivial_action(GroupDesc::torus(1), complexes::point()),
                                      build_trivial_action(GroupDesc::finite(symmetric_group(3)), complexes::disk(4)),
                                      load("square-corner.json")};
  auto rng = testing::make_rng(43);
  for (int t = 0; t < 4; ++t) spaces.push_back(testing::random_two_strata(rng));
  for (const auto& sp : spaces)
    for (long w = 1; w <= 3; ++w) {
      CAPTURE(sp.name, w);
      KTheory k = k_theory(sp, w);
      TheoryResult dl = delocalized_cohomology(sp, w);
      CHECK(k.result.even == dl.even);
      CHECK(chern_rank(sp, k) == dl.even);
    }
  // counted by hand: Z2 on the open part, (2W+1) x 2 labels at each pole
  for (long w = 1; w <= 3; ++w) CHECK(k_theory(build_appendix_sphere_z2(), w).result.even == static_cast<std::size_t>(2 + 2 * (4 * w)));
}

TEST_CASE("K-theory generators are compatible tuples") {
  ResolutionSpace sp = build_appendix_sphere();
  KTheory k = k_theory(sp, 1);
  for (const auto& g : k.generators) {
    auto values = component_values(sp, g);
    REQUIRE(values.size() == 3);
    CHECK(values[1].value.dimension() == values[0].value.dimension());
    CHECK(values[2].value.dimension() == values[0].value.dimension());
  }
}

TEST_CASE("K-theory refuses non-contractible strata") {
  for (const auto& sp : {build_free_action(GroupDesc::finite(cyclic_group(2)), complexes::circle()), build_mobius_example()}) {
    try {
      k_theory(sp, 1);
      FAIL("expected out_of_scope");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::out_of_scope);
      CHECK(std::string(e.what()).find(k_theory_scope_message) != std::string::npos);
    }
  }
  CHECK_FALSE(k_theory_scope_problem(build_appendix_sphere()).has_value());
}

TEST_CASE("Chern character of the zero class is zero") {
  ResolutionSpace sp = build_appendix_sphere();
  KTheory k = k_theory(sp, 2);
  KClass zero = k.generators.front();
  for (auto& s : zero.values)
    for (auto& v : s) v = RepRingElem(v.group());
  ChernImage ch = chern_character(sp, zero, 2);
  for (const auto& x : ch.coordinates) CHECK(x == 0);
  // and the identity on coefficients for a generator
  ChernImage g = chern_character(sp, k.generators.front(), 2);
  SpaceComplexes sc = space_complexes(sp, CoefficientSpec::rep(2));
  PullbackComplex pc = compatibility_complex(sc);
  CHECK(g.ambient == k_class_cochain(sc, pc, k.generators.front()));
}

TEST_CASE("triangle check on the sphere and on points") {
  ResolutionSpace sp = build_appendix_sphere();
  for (long w = 0; w <= 3; ++w)
    for (int d = 0; d <= 6; d += 2) CHECK(chern_triangle_check(sp, d, w).passed);
  CHECK(chern_triangle_check(build_trivial_action(GroupDesc::torus(1), complexes::point()), 4, 2).passed);
  CHECK(chern_triangle_check(build_trivial_action(GroupDesc::finite(symmetric_group(3)), complexes::point()), 4, 0).passed);
  CHECK(chern_triangle_check(build_appendix_sphere_z2(), 4, 1).passed);
}

TEST_CASE("localization sends cocycles to cocycles and coboundaries to zero") {
  auto rng = testing::make_rng(44);
  std::vector<ResolutionSpace> spaces{build_appendix_sphere(), build_appendix_sphere_z2(), build_mobius_example()};
  for (int t = 0; t < 3; ++t) spaces.push_back(testing::random_two_strata(rng));
  for (const auto& sp : spaces) {
    CAPTURE(sp.name);
    SpaceComplexes rep = space_complexes(sp, CoefficientSpec::rep(1));
    PullbackComplex pc = compatibility_complex(rep);
    for (std::size_t q = 0; q < pc.complex.length(); ++q) {
      const int qi = static_cast<int>(q);
      CohomologyBasis b = cohomology_basis(pc.complex, qi);
      for (int trial = 0; trial < 3; ++trial) {
        QVector z = b.cocycles * random_vector(rng, b.cocycles.cols());
        CHECK_NOTHROW(localization_map(sp, 1, q, pc.embedding[q] * z, 4));
      }
      CHECK_NOTHROW(localization_on_cohomology(sp, 1, q, 4));
    }
  }
}

TEST_CASE("localization on the sphere has full rank in each Borel degree") {
  LocalizationOnCohomology l = localization_on_cohomology(build_appendix_sphere(), 2, 0, 6);
  CHECK(l.source_dim == 9);
  CHECK(l.ranks == Dims{1, 2, 2, 2});
}

TEST_CASE("localization rejects cochains that are not closed") {
  ResolutionSpace m = build_mobius_example();
  LocalSystem rep = rep_system(m, 0, 1);
  SpaceComplexes sc = space_complexes(m, CoefficientSpec::rep(1));
  PullbackComplex pc = compatibility_complex(sc);
  QVector v(pc.ambient_dims[0]);
  for (std::size_t i = 0; i < rep.labels.size(); ++i)
    if (rep.labels[i].v[0] == 1) v[i] = 1;  // z^1 alone is not fixed by the flip
  try {
    localization_map(m, 1, 0, v, 2);
    FAIL("expected not_cocycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_cocycle);
  }
  // on the sphere: open value 1 at one end only violates compatibility
  ResolutionSpace sp = build_appendix_sphere();
  SpaceComplexes ss = space_complexes(sp, CoefficientSpec::rep(1));
  QVector w(compatibility_complex(ss).ambient_dims[0]);
  w[1] = 1;
  CHECK_THROWS_AS(localization_map(sp, 1, 0, w, 2), Error);
}

TEST_CASE("fixed-point push-forward examples") {
  CHECK(ab_pushforward({{poly({{0, 1}}), 1}, {poly({{0, 1}}), -1}}, 4).is_zero());
  for (long w : {1L, 2L, -3L, 5L})
    for (long c : {-2L, 1L, 3L}) {
      Polynomial fn = poly({{0, 1}, {1, Rational(c)}});
      Polynomial out = ab_pushforward({{fn, w}, {poly({{0, 1}}), -w}}, 4);
      CHECK(out == poly({{0, Rational(c) / Rational(w)}}));
    }
  CHECK(ab_pushforward({{poly({{1, 1}}), 1}, {Polynomial(1), -1}}, 4) == poly({{0, 1}}));
  try {
    ab_pushforward({{poly({{0, 1}}), 1}, {Polynomial(1), -1}}, 4);
    FAIL("expected localization obstruction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::localization_obstruction);
    CHECK(std::string(e.what()).find("localization obstruction") == 0);
  }
  CHECK_THROWS_AS(ab_pushforward({{poly({{0, 1}}), 0}}, 2), Error);
}

TEST_CASE("push-forward lowers degree by two") {
  auto rng = testing::make_rng(45);
  for (int t = 0; t < 40; ++t) {
    const int k = static_cast<int>(testing::uniform(rng, 1, 4));
    const long w = static_cast<long>(testing::uniform(rng, 1, 3));
    Rational a = static_cast<long>(testing::uniform(rng, 1, 5)), b = static_cast<long>(testing::uniform(rng, 0, 5)) - 2;
    Polynomial out = ab_pushforward({{poly({{k, a}}), w}, {poly({{k, b}}), -w}}, 2 * k);
    if (a == b) {
      CHECK(out.is_zero());
      continue;
    }
    // input of H_G degree 2k, output of degree 2k - 2
    REQUIRE(out.terms().size() == 1);
    CHECK(out.terms().begin()->first == Monomial{k - 1});
    CHECK(out.terms().begin()->second == (a - b) / Rational(w));
  }
}

TEST_CASE("push-forward on the sphere model") {
  std::vector<PushforwardRow> rows = fixed_point_pushforward(build_appendix_sphere(), 4);
  // degree 0: the unit; degree 2 and 4: one class per pole
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].degree == 0);
  CHECK(rows[0].result.is_zero());
  std::multiset<std::string> deg2;
  for (const auto& r : rows)
    if (r.degree == 2) deg2.insert(r.result.to_string());
  CHECK(deg2 == std::multiset<std::string>{"1", "-1"});
  CHECK_THROWS_AS(fixed_point_pushforward(build_mobius_example(), 2), Error);
}

TEST_CASE("theories are invariant under subdivision") {
  auto rng = testing::make_rng(46);
  std::vector<ResolutionSpace> spaces{build_appendix_sphere(), build_appendix_sphere_z2(), build_mobius_example()};
  for (int t = 0; t < 3; ++t) {
    spaces.push_back(build_trivial_action(testing::random_small_group(rng), testing::random_complex(rng)));
    spaces.push_back(build_free_action(testing::random_small_group(rng), testing::random_complex(rng)));
  }
  for (const auto& sp : spaces) {
    CAPTURE(sp.name);
    ResolutionSpace s = subdivide_space(sp);
    CHECK(equivariant_cohomology(s, 5).dims == equivariant_cohomology(sp, 5).dims);
    CHECK(delocalized_cohomology(s, 2).dims == delocalized_cohomology(sp, 2).dims);
    if (!k_theory_scope_problem(sp)) CHECK(k_theory(s, 2).result.even == k_theory(sp, 2).result.even);
  }
}

TEST_CASE("window monotonicity") {
  // exact increments: each new window adds two weights at every pole
  ResolutionSpace sp = build_appendix_sphere();
  for (long w = 0; w < 4; ++w) CHECK(delocalized_cohomology(sp, w + 1).even == delocalized_cohomology(sp, w).even + 4);
  ResolutionSpace pt = build_trivial_action(GroupDesc::torus(2), complexes::point());
  for (long w = 0; w < 3; ++w) {
    const long side = 2 * w + 1, next = 2 * w + 3;
    CHECK(delocalized_cohomology(pt, w + 1).even - delocalized_cohomology(pt, w).even == static_cast<std::size_t>(next * next - side * side));
  }
  auto rng = testing::make_rng(47);
  std::vector<ResolutionSpace> spaces{build_mobius_example(), build_appendix_sphere_z2(), load("square-corner.json")};
  for (int t = 0; t < 3; ++t) spaces.push_back(testing::random_two_strata(rng));
  for (const auto& s : spaces) {
    Dims prev = delocalized_cohomology(s, 0).dims;
    for (long w = 1; w <= 3; ++w) {
      Dims cur = delocalized_cohomology(s, w).dims;
      REQUIRE(cur.size() == prev.size());
      for (std::size_t q = 0; q < cur.size(); ++q) CHECK(cur[q] >= prev[q]);
      prev = cur;
    }
  }
}

TEST_CASE("invalid spaces are refused by the theories") {
  ResolutionSpace sp = build_appendix_sphere();
  sp.strata[1].fibration.clear();
  try {
    equivariant_cohomology(sp, 2);
    FAIL("expected invalid_space");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_space);
    CHECK(std::string(e.what()).find("stratum N") != std::string::npos);
  }
  CHECK_THROWS_AS(delocalized_cohomology(build_appendix_sphere(), -1), Error);
  CHECK_THROWS_AS(equivariant_cohomology(build_appendix_sphere(), -1), Error);
}
