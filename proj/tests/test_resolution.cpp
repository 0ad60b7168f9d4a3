#include "catch2/catch_amalgamated.hpp"

#include <fstream>
#include <sstream>

#include "equires/io/space_json.hpp"
#include "equires/resolution/subdivide.hpp"
#include "equires/resolution/validate.hpp"
#include "support.hpp"

using namespace equires;

namespace {

ResolutionSpace load(const std::string& rel) {
  std::ifstream in(testing::data_dir() + "/" + rel);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_space(buf.str());
}

const ValidationIssue* find_issue(const ValidationReport& r, const std::string& code) {
  for (const auto& i : r.issues)
    if (i.code == code) return &i;
  return nullptr;
}

bool names_cell(const ValidationReport& r, const std::string& code, std::size_t cell) {
  for (const auto& i : r.issues)
    if (i.code == code && std::find(i.cells.begin(), i.cells.end(), cell) != i.cells.end()) return true;
  return false;
}

}  // namespace

TEST_CASE("named complexes have the expected Betti numbers") {
  using V = std::vector<std::size_t>;
  CHECK(testing::betti(complexes::point()) == V{1});
  CHECK(testing::betti(complexes::interval()) == V{1, 0});
  CHECK(testing::betti(complexes::circle()) == V{1, 1});
  CHECK(testing::betti(complexes::polygon(5)) == V{1, 1});
  CHECK(testing::betti(complexes::disk(4)) == V{1, 0, 0});
  CHECK(testing::betti(complexes::sphere()) == V{1, 0, 1});
  CHECK(testing::betti(complexes::torus(3)) == V{1, 2, 1});
  CHECK(testing::betti(complexes::disjoint_union(complexes::circle(), complexes::point())) == V{2, 1});
  CHECK(complexes::by_name("torus") == complexes::torus());
  CHECK_THROWS_AS(complexes::by_name("klein-bottle-ish"), Error);
}

TEST_CASE("shipped builders validate") {
  std::vector<ResolutionSpace> spaces{build_appendix_sphere(), build_appendix_sphere_z2(), build_mobius_example(),
                                      build_trivial_action(GroupDesc::finite(symmetric_group(3)), complexes::torus()),
                                      build_free_action(GroupDesc::torus(1), complexes::sphere())};
  for (const auto& sp : spaces) {
    CAPTURE(sp.name);
    ValidationReport r = validate_resolution(sp);
    CHECK(r.ok());
  }
}

TEST_CASE("shipped data files validate") {
  for (const std::string f : {"appendix-sphere.json", "appendix-sphere-z2.json", "mobius.json", "square-corner.json"}) {
    CAPTURE(f);
    ValidationReport r = validate_resolution(load(f));
    for (const auto& i : r.issues) UNSCOPED_INFO(i.code << " " << i.message);
    CHECK(r.ok());
  }
}

TEST_CASE("random two-strata spaces validate") {
  auto rng = testing::make_rng(21);
  for (int t = 0; t < 25; ++t) CHECK(validate_resolution(testing::random_two_strata(rng)).ok());
}

TEST_CASE("corrupted fixtures are caught at the named cells") {
  SECTION("boundary squared") {
    ValidationReport r = validate_resolution(load("corrupt/boundary-squared.json"));
    const ValidationIssue* i = find_issue(r, "boundary_squared");
    REQUIRE(i);
    CHECK(i->stratum == "Z");
    CHECK(i->cells.front() == 8);
  }
  SECTION("non-commuting triangle") {
    ValidationReport r = validate_resolution(load("corrupt/non-commuting-triangle.json"));
    const ValidationIssue* i = find_issue(r, "triangle_not_commuting");
    REQUIRE(i);
    CHECK(i->stratum == "L,C");
    CHECK(i->cells == std::vector<std::size_t>{0});
  }
  SECTION("equal-dimension intersecting bases") {
    ValidationReport r = validate_resolution(load("corrupt/equal-dimension-bases.json"));
    const ValidationIssue* i = find_issue(r, "ifs_equal_base_dimension");
    REQUIRE(i);
    CHECK(i->stratum == "L,B");
    CHECK(std::find(i->cells.begin(), i->cells.end(), 0u) != i->cells.end());
  }
  SECTION("non-flat monodromy") {
    ValidationReport r = validate_resolution(load("corrupt/non-flat-monodromy.json"));
    const ValidationIssue* i = find_issue(r, "non_flat");
    REQUIRE(i);
    CHECK(i->cells == std::vector<std::size_t>{4, 0});
  }
  SECTION("dangling face id is a schema error") {
    try {
      load("corrupt/dangling-face.json");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      CHECK(std::string(e.what()).find("/faces/0/cells/3") != std::string::npos);
    }
  }
}

TEST_CASE("random boundary corruption names the corrupted cell") {
  auto rng = testing::make_rng(22);
  for (int t = 0; t < 25; ++t) {
    ResolutionSpace sp = testing::random_two_strata(rng);
    std::vector<Cell> cells = sp.strata[0].complex.cells();
    const std::size_t top = cells.size() - 1;  // the 2-cell of the disk
    auto& b = cells[top].boundary;
    b[testing::uniform(rng, 0, b.size() - 1)].coeff *= -1;
    sp.strata[0].complex = CellComplex(cells);
    ValidationReport r = validate_resolution(sp);
    CHECK(names_cell(r, "boundary_squared", top));
  }
}

TEST_CASE("hand-made structural mistakes are reported") {
  auto rng = testing::make_rng(23);
  ResolutionSpace base = testing::random_two_strata(rng);

  SECTION("missing fibration entry") {
    ResolutionSpace sp = base;
    const std::size_t c = sp.strata[1].face.back();
    sp.strata[1].fibration.erase(c);
    CHECK(names_cell(validate_resolution(sp), "fibration", c));
  }
  SECTION("face that is not closed") {
    ResolutionSpace sp = base;
    sp.strata[2].face.push_back(sp.strata[1].face.back());
    sp.strata[2].fibration[sp.strata[1].face.back()] = CellImage{0, 1};
    CHECK(validate_resolution(sp).has("face_not_closed"));
  }
  SECTION("dangling face") {
    ResolutionSpace sp = base;
    sp.strata[2].face.push_back(999);
    CHECK(names_cell(validate_resolution(sp), "dangling_face", 999));
  }
  SECTION("duplicate names") {
    ResolutionSpace sp = base;
    sp.strata[2].name = "E";
    CHECK(validate_resolution(sp).has("duplicate_stratum"));
  }
  SECTION("missing inclusion") {
    ResolutionSpace sp = base;
    sp.strata[1].inclusion.reset();
    CHECK(validate_resolution(sp).has("inclusion"));
  }
  SECTION("missing triangle") {
    ResolutionSpace sp = base;
    sp.strata[1].over.clear();
    CHECK(validate_resolution(sp).has("triangle_missing"));
  }
  SECTION("isotropy cycle") {
    ResolutionSpace sp = base;
    sp.strata[2].over.push_back(TriangleMap{1, {{0, 0}}, SubgroupInclusion::identity(sp.strata[2].group)});
    CHECK_FALSE(validate_resolution(sp).ok());
  }
  SECTION("zero fixed point weight") {
    ResolutionSpace sp = build_appendix_sphere();
    sp.strata[1].fixed_point_weight = 0;
    CHECK(validate_resolution(sp).has("fixed_point_weight"));
  }
}

TEST_CASE("monodromy must be flat and well formed") {
  ResolutionSpace m = build_mobius_example();
  CHECK(validate_resolution(m).ok());
  ResolutionSpace short_list = m;
  short_list.strata[0].monodromy->element[1] = {1};
  CHECK_THROWS_AS(check_monodromy(short_list.strata[0]), Error);
  CHECK(validate_resolution(short_list).has("monodromy"));
  ResolutionSpace wrong_group = m;
  wrong_group.strata[0].monodromy->group = GroupDesc::extension(GroupDesc::torus(2), cyclic_group(2), {ZMatrix::identity(2), ZMatrix::identity(2)}, {});
  CHECK_THROWS_AS(check_monodromy(wrong_group.strata[0]), Error);
}

TEST_CASE("subdivision preserves Betti numbers") {
  auto rng = testing::make_rng(24);
  for (int t = 0; t < 40; ++t) {
    CellComplex c = testing::random_complex(rng);
    CellComplex s = subdivide(c);
    CHECK(s.boundary_squared_violations().empty());
    CHECK(s.structural_problems().empty());
    CHECK(testing::betti(s) == testing::betti(c));
    CHECK(s.size() >= c.size());
  }
}

TEST_CASE("subdivided spaces stay valid") {
  for (const auto& sp : {build_appendix_sphere(), build_appendix_sphere_z2(), build_mobius_example(),
                         build_free_action(GroupDesc::torus(1), complexes::torus())}) {
    CAPTURE(sp.name);
    ResolutionSpace s = subdivide_space(sp);
    CHECK(validate_resolution(s).ok());
    CHECK(s.total().size() > sp.total().size());
  }
  auto rng = testing::make_rng(25);
  CHECK_THROWS_AS(subdivide_space(testing::random_two_strata(rng)), Error);
}

TEST_CASE("local systems of the Mobius example are twisted") {
  ResolutionSpace m = build_mobius_example();
  LocalSystem rep = rep_system(m, 0, 1);
  CHECK(rep.fiber_dim == 3);
  LocalSystem sub = subdivided_system(rep);
  CHECK(sub.fiber_dim == 3);
  CHECK(sub.base.size() == subdivide(rep.base).size());
}
