#include "catch2/catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "equires/cli/run.hpp"
#include "support.hpp"

using namespace equires;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string data(const std::string& rel) { return testing::data_dir() + "/" + rel; }

std::string parse_error(const std::string& text) {
  try {
    io::parse_space(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    return e.what();
  }
  FAIL("expected a parse error");
  return "";
}

std::string mutated(const std::string& file, const std::function<void(io::Json&)>& edit) {
  io::Json j = io::Json::parse(read_file(data(file)));
  edit(j);
  return j.dump(2);
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_job(const cli::JobSpec& job) {
  std::ostringstream out, err;
  const int code = cli::run(job, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("equires-test-" + std::to_string(testing::seed()) + "-" + name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST_CASE("shipped data files round-trip byte for byte") {
  for (const std::string f : {"appendix-sphere.json", "appendix-sphere-z2.json", "mobius.json", "square-corner.json"}) {
    CAPTURE(f);
    const std::string text = read_file(data(f));
    CHECK(io::serialize_space(io::parse_space(text)) == text);
  }
}

TEST_CASE("shipped files match the builders") {
  CHECK(io::serialize_space(build_appendix_sphere()) == read_file(data("appendix-sphere.json")));
  CHECK(io::serialize_space(build_appendix_sphere_z2()) == read_file(data("appendix-sphere-z2.json")));
  CHECK(io::serialize_space(build_mobius_example()) == read_file(data("mobius.json")));
}

TEST_CASE("random spaces survive a round trip") {
  auto rng = testing::make_rng(51);
  for (int t = 0; t < 15; ++t) {
    ResolutionSpace sp = t % 3 == 0   ? testing::random_two_strata(rng)
                         : t % 3 == 1 ? build_trivial_action(testing::random_small_group(rng), testing::random_complex(rng))
                                      : build_free_action(testing::random_small_group(rng), testing::random_complex(rng));
    const std::string text = io::serialize_space(sp);
    ResolutionSpace back = io::parse_space(text);
    CHECK(io::serialize_space(back) == text);
    CHECK(back.total() == sp.total());
    CHECK(equivariant_cohomology(back, 3).dims == equivariant_cohomology(sp, 3).dims);
  }
}

TEST_CASE("malformed JSON reports a byte position") {
  std::string msg = parse_error("{\"name\": ");
  CHECK(msg.find("malformed JSON at byte") == 0);
  CHECK(parse_error("[1, 2]").find("schema error at /") == 0);
}

TEST_CASE("schema errors carry JSON pointers") {
  CHECK(parse_error(read_file(data("corrupt/dangling-face.json"))).find("/faces/0/cells/3") != std::string::npos);
  std::string m = parse_error(mutated("appendix-sphere.json", [](io::Json& j) { j["complexes"]["Z"]["cells"][0]["dim"] = 0; }));
  CHECK(m.find("/complexes/Z/cells/0/dim") != std::string::npos);
  CHECK(m.find("integers are written as strings") != std::string::npos);
  m = parse_error(mutated("appendix-sphere.json", [](io::Json& j) { j.erase("strata"); }));
  CHECK(m.find("/strata") != std::string::npos);
  m = parse_error(mutated("appendix-sphere.json", [](io::Json& j) { j["strata"][1]["group"] = "nope"; }));
  CHECK(m.find("/strata/1/group") != std::string::npos);
  m = parse_error(mutated("appendix-sphere.json", [](io::Json& j) { j["strata"][2]["complex"] = "missing"; }));
  CHECK(m.find("/strata/2/complex") != std::string::npos);
  m = parse_error(mutated("appendix-sphere.json", [](io::Json& j) { j["complexes"]["Z"]["cells"][2]["boundary"][0][0] = "7"; }));
  CHECK(m.find("/complexes/Z/cells/2/boundary/0/0") != std::string::npos);
  m = parse_error(mutated("mobius.json", [](io::Json& j) { j["groups"]["S1"]["rank"] = "x"; }));
  CHECK(m.find("/groups/S1/rank") != std::string::npos);
}

TEST_CASE("group names parse back") {
  for (const std::string n : {"1", "Z2", "Z6", "D4", "S3", "S4", "S1", "T2", "S1xZ2", "S3xT2"}) CHECK(cli::group_by_name(n).name() == n);
  CHECK_THROWS_AS(cli::group_by_name("Q8"), Error);
  CHECK_THROWS_AS(cli::group_by_name("Z"), Error);
}

TEST_CASE("run: appendix example") {
  cli::JobSpec job;
  job.source = "appendix-sphere";
  job.hg = 6;
  job.hdl = 2;
  job.k = 2;
  job.chern = {6, 2};
  Outcome o = run_job(job);
  CHECK(o.code == 0);
  CHECK(o.err.empty());
  CHECK(o.out.find("hg  D=6  q=2  dim=2\n") != std::string::npos);
  CHECK(o.out.find("hg  D=6  q=5  dim=0\n") != std::string::npos);
  CHECK(o.out.find("hdl  W=2  parity=odd  dim=0\n") != std::string::npos);
  CHECK(o.out.find("k  W=2  group=K0  rank=9  torsion=none\n") != std::string::npos);
  CHECK(o.out.find("triangle=pass") != std::string::npos);
  CHECK(o.out.find("bijective=yes") != std::string::npos);
  // deterministic
  CHECK(run_job(job).out == o.out);
}

TEST_CASE("run: builders and files agree") {
  cli::JobSpec a, b;
  a.source = "mobius";
  b.source = data("mobius.json");
  a.hg = b.hg = 5;
  a.hdl = b.hdl = 2;
  CHECK(run_job(a).out == run_job(b).out);
}

TEST_CASE("run: output formats") {
  cli::JobSpec job;
  job.source = "trivial:S3:point";
  job.hg = 2;
  job.format = cli::Format::csv;
  Outcome csv = run_job(job);
  CHECK(csv.out.rfind("hg,D,2,q,0,dim,1\n", 0) == 0);
  job.format = cli::Format::jsonl;
  Outcome jl = run_job(job);
  std::istringstream lines(jl.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    io::Json j = io::Json::parse(line);
    CHECK(j["computation"] == "hg");
    ++n;
  }
  CHECK(n == 3);
  CHECK(cli::csv_field("a,b") == "\"a,b\"");
  CHECK(cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("run: exit codes") {
  cli::JobSpec job;
  SECTION("out of scope") {
    job.source = "free:Z2:circle";
    job.k = 1;
    Outcome o = run_job(job);
    CHECK(o.code == 3);
    CHECK(o.err.find(k_theory_scope_message) != std::string::npos);
  }
  SECTION("parameter too large") {
    job.source = "appendix-sphere";
    job.hg = 65;
    Outcome o = run_job(job);
    CHECK(o.code == 1);
    CHECK(o.err.find("--hg D") != std::string::npos);
  }
  SECTION("unknown builder") {
    job.source = "no-such-builder";
    CHECK(run_job(job).code == 1);
  }
  SECTION("malformed file") {
    job.source = temp_file("bad.json", "{\"strata\": [");
    Outcome o = run_job(job);
    CHECK(o.code == 1);
    CHECK(o.err.find("malformed JSON at byte") != std::string::npos);
  }
  SECTION("dangling face") {
    job.source = data("corrupt/dangling-face.json");
    Outcome o = run_job(job);
    CHECK(o.code == 1);
    CHECK(o.err.find("/faces/0/cells/3") != std::string::npos);
  }
  SECTION("validation failures") {
    for (const std::string f : {"boundary-squared.json", "non-commuting-triangle.json", "equal-dimension-bases.json", "non-flat-monodromy.json"}) {
      CAPTURE(f);
      job.source = data("corrupt/" + f);
      job.validate = true;
      job.hg = 2;
      Outcome o = run_job(job);
      CHECK(o.code == 2);
      CHECK(o.out.find("validate  status=invalid") == 0);
      CHECK(o.out.find("cells=") != std::string::npos);
      CHECK(o.out.find("error  message=invalid space") != std::string::npos);
    }
  }
  SECTION("push-forward outside its model") {
    job.source = "mobius";
    job.ab = 2;
    CHECK(run_job(job).code == 3);
  }
}

TEST_CASE("run: emit writes a parseable description") {
  cli::JobSpec job;
  job.source = "appendix-sphere-z2";
  job.emit = temp_file("emit.json", "");
  CHECK(run_job(job).code == 0);
  CHECK(read_file(*job.emit) == read_file(data("appendix-sphere-z2.json")));
}
