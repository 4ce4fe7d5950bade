#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mixnorm/calibration.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/experiments.hpp"
#include "mixnorm/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace mixnorm;
namespace fs = std::filesystem;

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.experiment_id = "demo";
  r.params["p"] = "2";
  r.curves["c"] = {{0.0, 1.0}, {0.5, 0.1 + 0.2}};
  r.scalars["x"] = 1.0 / 3.0;
  r.scalars["big"] = INFINITY;
  r.verdicts["check.a"] = "PASS";
  r.seed = 42;
  r.tolerances["t"] = 1e-9;
  r.runtime_ms = 17;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 0.0}) CHECK(parse_double(format_double(v)) == v);
  CHECK(format_double(INFINITY) == "inf");
  CHECK(std::isinf(parse_double("inf")));
  CHECK_THROWS_AS(parse_double("abc"), UsageError);
}

TEST_CASE("JSON reports round-trip bit-identically") {
  const auto r = sample_report();
  const auto back = report_from_json(to_json_string(r));
  CHECK(back.same_as(r));
  CHECK(back.runtime_ms == 17);
  CHECK(back.scalars.at("x") == r.scalars.at("x"));
  CHECK(std::isinf(back.scalars.at("big")));
  auto other = r;
  other.scalars["x"] = std::nextafter(other.scalars["x"], 1.0);
  CHECK_FALSE(other.same_as(r));
}

TEST_CASE("pass/fail aggregation") {
  auto r = sample_report();
  CHECK(r.passed());
  r.verdicts["check.b"] = "FAIL";
  CHECK_FALSE(r.passed());
}

TEST_CASE("CSV rows and summary block") {
  const auto r = sample_report();
  const auto csv = to_csv(r);
  CHECK(csv.rfind("experiment_id,series,x,y\n", 0) == 0);
  CHECK(csv.find("demo,c,0.5,0.30000000000000004") != std::string::npos);
  const auto s = summary_block(r);
  CHECK(s.find("seed = 42") != std::string::npos);
  CHECK(s.find("check.a = PASS") != std::string::npos);
}

TEST_CASE("emit writes atomically and creates directories") {
  const auto dir = fs::temp_directory_path() / "mixnorm_report_test";
  fs::remove_all(dir);
  emit(sample_report(), Format::CSV, dir / "sub" / "out.csv");
  CHECK(fs::exists(dir / "sub" / "out.csv"));
  CHECK(fs::exists(dir / "sub" / "out.csv.summary"));
  emit(sample_report(), Format::JSON, dir / "out.json");
  CHECK(report_from_json(slurp(dir / "out.json")).same_as(sample_report()));
  fs::remove_all(dir);
  CHECK(parse_format("csv") == Format::CSV);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
}

TEST_CASE("config files and precedence") {
  auto cfg = Config::from_string("# comment\np = 4\n\nalpha=0.5\n");
  CHECK(cfg.get_double("p", 2.0) == 4.0);
  CHECK(cfg.get_double("q", 2.0) == 2.0);
  Config cli;
  cli.set("p", "1");
  cfg.merge(cli);
  CHECK(cfg.get_double("p", 2.0) == 1.0);
  CHECK(cfg.get_double("alpha", 1.0) == 0.5);
  CHECK_THROWS_AS(Config::from_string("no equals sign"), UsageError);
  CHECK_THROWS_AS(cfg.get_int("alpha", 1), UsageError);
  CHECK_THROWS_AS(Config::from_file("/nonexistent/file.cfg"), UsageError);
  Config s;
  s.set("seed", "7");
  CHECK(s.get_seed() == 7);
}

TEST_CASE("calibration fixtures round-trip") {
  CalibrationFixtures fx;
  CalibrationEntry e;
  e.id = "lacunary";
  e.params["K"] = "10";
  e.constants["c"] = 0.15;
  e.oracle_resolution["M"] = 4096;
  fx.entries.push_back(e);
  const auto back = fixtures_from_json(fixtures_to_json(fx));
  CHECK(back.at("lacunary").constants.at("c") == 0.15);
  CHECK_THROWS_AS(back.at("nope"), NotFoundError);
  CHECK(fixtures_file("dir") == fs::path("dir") / "calibration.json");
  CHECK(fixtures_file("x.json") == fs::path("x.json"));
}

TEST_CASE("experiment catalog") {
  const auto& cat = experiment_catalog();
  CHECK(cat.size() == 17);
  std::set<std::string> ids;
  for (const auto& e : cat) ids.insert(e.id);
  CHECK(ids.size() == 17);
  for (const char* id : {"fejer-check", "embed-linfty", "xnu-embed", "approx-E", "calibrate"}) CHECK(ids.count(id) == 1);
  CHECK_THROWS_AS(run_experiment("nope"), UsageError);
  Config bad;
  bad.set("p", "-1");
  CHECK_THROWS_AS(run_experiment("monomial-norms", bad), UsageError);
}

TEST_CASE("experiments echo their parameters and are reproducible") {
  Config cfg;
  cfg.set("N", "4");
  const auto a = run_experiment("fejer-check", cfg);
  const auto b = run_experiment("fejer-check", cfg);
  CHECK(a.params.at("N") == "4");
  CHECK(a.params.at("tol") == "1e-08");
  CHECK(a.tolerances.count("mean_rel_tol") == 1);
  CHECK(a.passed());
  CHECK(a.same_as(b));
}
