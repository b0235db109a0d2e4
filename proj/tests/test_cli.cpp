#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;
using dtifuse::testing::data_path;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + DTIFUSE_CLI + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("dtifuse_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string write(const TempDir& dir, const std::string& name, const std::string& text) {
  const auto p = dir.file(name);
  std::ofstream(p) << text;
  return p;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_CASE("build-kg then score and batch the topotecan fixtures") {
  TempDir dir;
  const auto kg = dir.file("fixture.kgc");
  const auto built = run("build-kg --edges " + quote(data_path("topotecan_edges.tsv")) + " --out " + quote(kg));
  REQUIRE(built.code == 0);
  const auto summary = nlohmann::json::parse(built.out);
  CHECK(summary["edges"] == 8);
  CHECK(summary["nodes"] == 8);

  const std::string resources = " --kg " + quote(kg) + " --corpus " + quote(data_path("topotecan_corpus.json")) +
                                " --drugs " + quote(data_path("drugs.tsv")) + " --targets " +
                                quote(data_path("targets.fasta"));

  const auto scored = run("score --drug Topotecan --target TOP1 --no-durations" + resources);
  REQUIRE(scored.code == 0);
  const auto j = nlohmann::json::parse(scored.out);
  CHECK(j["search_dti_score"] == 0.27);
  CHECK(j["kg_dti_score"] == 1.0);
  CHECK(j["hops"] == 1);
  CHECK(j["trace"].size() == 6);
  CHECK(j["merged_dti_score"].is_number());
  CHECK(j["status"]["ml"]["state"] == "OK");

  const auto again = run("score --drug Topotecan --target TOP1 --no-durations --concurrent" + resources);
  CHECK(again.out == scored.out);

  const auto batch = run("batch --no-durations --input " + quote(data_path("queries.tsv")) + resources);
  REQUIRE(batch.code == 0);
  std::istringstream lines(batch.out);
  std::string line;
  std::vector<double> kg_scores;
  while (std::getline(lines, line)) kg_scores.push_back(nlohmann::json::parse(line)["kg_dti_score"]);
  REQUIRE(kg_scores.size() == 3);
  CHECK(kg_scores[0] == 1.0);
  CHECK(std::abs(kg_scores[1] - 0.7213475204444817) < 1e-12);
  CHECK(std::abs(kg_scores[2] - 0.7213475204444817) < 1e-12);
}

TEST_CASE("fit-weights and eval") {
  TempDir dir;
  const auto table = write(dir, "fit.tsv",
                           "ml_score\tsearch_score\tkg_score\tground_truth\n"
                           "1\t0\t0\t0.2\n0\t1\t0\t0.3\n0\t0\t1\t0.5\n");
  const auto fit = run("fit-weights --input " + quote(table));
  REQUIRE(fit.code == 0);
  const auto w = nlohmann::json::parse(fit.out)["weights"];
  CHECK(std::abs(w["ml"].get<double>() - 0.2) < 1e-12);
  CHECK(std::abs(w["search"].get<double>() - 0.3) < 1e-12);
  CHECK(std::abs(w["kg"].get<double>() - 0.5) < 1e-12);

  const auto pred = write(dir, "pred.tsv", "id\tscore\na\t1\nb\t2\nc\t3\nz\t9\n");
  const auto truth = write(dir, "truth.tsv", "c\t2\na\t1\nb\t3\n");
  const auto ev = run("eval --pred " + quote(pred) + " --truth " + quote(truth));
  REQUIRE(ev.code == 0);
  const auto m = nlohmann::json::parse(ev.out);
  CHECK(m["matched"] == 3);
  CHECK(std::abs(m["mse"].get<double>() - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(m["correlation"].get<double>() - 0.5) < 1e-12);
  CHECK(m["unmatched"][0] == "z");
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run("").code == 1);
  CHECK(run("score --drug Topotecan").code == 1);
  CHECK(run("score --drug Topotecan --target TOP1 --alpha 0.7 --beta 0.3").code == 1);
  CHECK(run("score --drug '' --target TOP1").code == 1);
  CHECK(run("score --drug Topotecan --target TOP1 --kg " + quote(dir.file("missing.kgc"))).code == 2);
  const auto junk = write(dir, "junk.kgc", "not a graph cache");
  CHECK(run("score --drug Topotecan --target TOP1 --kg " + quote(junk)).code == 2);
  CHECK(run("fit-weights --input " + quote(dir.file("missing.tsv"))).code == 2);

  const auto kg = dir.file("fixture.kgc");
  REQUIRE(run("build-kg --edges " + quote(data_path("topotecan_edges.tsv")) + " --out " + quote(kg)).code == 0);
  // every scorer fails: unknown to the catalog, same entity twice, search backend refuses connections
  const auto all_failed = run("score --drug Nonexistium --target nonexistium --kg " + quote(kg) +
                              " --drugs " + quote(data_path("drugs.tsv")) + " --targets " +
                              quote(data_path("targets.fasta")) +
                              " --search-backend http --search-url http://127.0.0.1:1");
  CHECK(all_failed.code == 3);
}
