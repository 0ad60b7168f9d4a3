#include <algorithm>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "equires/cli/run.hpp"

int main(int argc, char** argv) {
  using equires::cli::Format;
  equires::cli::JobSpec job;
  std::string format = "text";
  std::string out_path;
  std::vector<long> chern;
  int hg = -1, ab = -1;
  long hdl = -1, k = -1;

  CLI::App app{"Equivariant cohomology and K-theory of resolution spaces"};
  app.add_option("space", job.source, "builder (appendix-sphere, appendix-sphere-z2, mobius, trivial:<group>:<complex>, free:<group>:<complex>) or JSON file")
      ->required();
  app.add_flag("--validate", job.validate, "check the resolution structure");
  app.add_option("--hg", hg, "reduced equivariant cohomology up to degree D");
  app.add_option("--hdl", hdl, "delocalized cohomology in weight window W");
  app.add_option("--k", k, "K-theory in weight window W");
  app.add_option("--chern", chern, "Chern character checks: D W")->expected(2);
  app.add_option("--ab", ab, "fixed-point push-forward up to degree D");
  app.add_option("--format", format, "text, csv or jsonl")->check(CLI::IsMember({"text", "csv", "jsonl"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  std::string emit;
  app.add_option("--emit", emit, "write the space as JSON to PATH (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (app.count("--hg")) job.hg = hg;
  if (app.count("--hdl")) job.hdl = hdl;
  if (app.count("--k")) job.k = k;
  if (app.count("--ab")) job.ab = ab;
  if (!chern.empty()) job.chern = std::make_pair(static_cast<int>(std::clamp(chern[0], -1L, 65L)), chern[1]);
  if (!emit.empty()) job.emit = emit;
  job.format = format == "csv" ? Format::csv : format == "jsonl" ? Format::jsonl : Format::text;

  if (out_path.empty()) return equires::cli::run(job, std::cout, std::cerr);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "equires: cannot write '" << out_path << "'\n";
    return 1;
  }
  return equires::cli::run(job, out, std::cerr);
}
