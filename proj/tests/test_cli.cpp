#include "doctest.h"

#include "bqg/runner.hpp"

using namespace bqg;

namespace {

RunConfig finite(const char* group, const char* g1, const char* g2, std::vector<std::string> checks) {
  RunConfig c;
  c.preset = group;
  c.g1 = g1;
  c.g2 = g2;
  c.checks = std::move(checks);
  return c;
}

const nlohmann::json* verdict(const nlohmann::json& r, const std::string& p) {
  for (const auto& v : r.at("verdicts"))
    if (v.at("property") == p) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("sym4 full suite passes, faithful but not isometric") {
  const RunResult r = run_verify(finite("sym4", "(1234)", "stab4", {"all"}));
  CHECK(r.pass);
  CHECK(r.report.at("overall") == true);
  CHECK(r.report.at("schema") == 1);
  REQUIRE(verdict(r.report, "faithful"));
  CHECK(verdict(r.report, "faithful")->at("pass") == true);
  CHECK(verdict(r.report, "isometric")->at("pass") == false);
  CHECK(verdict(r.report, "isometric")->contains("witness"));
  for (const auto& v : r.report.at("verdicts"))
    if (v.at("pass") == false) CHECK(v.contains("witness"));
}

TEST_CASE("sym3 with G1 = A3 is classical") {
  const RunResult r = run_verify(finite("sym3", "A3", "(12)", {"faithful", "isometry", "classify"}));
  CHECK(r.pass);
  CHECK(verdict(r.report, "faithful")->at("pass") == true);
  CHECK(verdict(r.report, "isometric")->at("pass") == true);
  CHECK(verdict(r.report, "classical")->at("pass") == true);
  CHECK(r.report.at("config").at("checks").size() == 3);
}

TEST_CASE("analytic target") {
  RunConfig c;
  c.analytic = "axb";
  c.checks = {"compat", "isometry"};
  c.seed = 7;
  const RunResult r = run_verify(c);
  CHECK(verdict(r.report, "compat")->at("pass") == true);
  CHECK(verdict(r.report, "isometric")->at("pass") == false);
  CHECK(verdict(r.report, "isometric")->contains("witness"));
}

TEST_CASE("configuration errors") {
  RunConfig c;
  c.analytic = "axb";
  c.checks = {"pentagon"};
  CHECK_THROWS_AS(run_verify(c), ConfigError);
  c.checks = {"frobnicate"};
  CHECK_THROWS_AS(run_verify(c), ConfigError);
  c.analytic = "nope";
  c.checks = {"all"};
  CHECK_THROWS_AS(run_verify(c), ConfigError);
  CHECK_THROWS_AS(run_verify(finite("sym4", "(1234)", "stab4", {"c0decay"})), ConfigError);
  CHECK_THROWS_AS(run_verify(finite("sym4", "(1234)", "A4", {"all"})), ConfigError);
  CHECK_THROWS_AS(run_verify(finite("sym3", "whole", "trivial", {"podles"})), ConfigError);
  RunConfig none;
  CHECK_THROWS_AS(run_verify(none), ConfigError);
  RunConfig file;
  file.group_path = "/nonexistent/group.json";
  file.g1 = "a";
  file.g2 = "b";
  CHECK_THROWS_AS(run_verify(file), ConfigError);
}

TEST_CASE("non-abelian G1 runs the applicable checks") {
  const RunResult r = run_verify(finite("sym3", "whole", "trivial", {"all"}));
  CHECK(r.pass);
  CHECK_FALSE(verdict(r.report, "podles"));
  CHECK(verdict(r.report, "pentagon"));
}

TEST_CASE("reports are deterministic and diff cleanly") {
  const auto cfg = finite("sym3", "(12)", "A3", {"all"});
  const RunResult a = run_verify(cfg), b = run_verify(cfg);
  CHECK(report_body(a.report).dump() == report_body(b.report).dump());
  const DiffResult d = diff_reports(a.report, b.report);
  CHECK(d.lines.empty());
  CHECK(d.verdicts_identical);
}

TEST_CASE("diff of seeds and of groups") {
  RunConfig c;
  c.analytic = "axb";
  c.checks = {"compat", "isometry"};
  c.samples = 2000;
  const RunResult r0 = run_verify(c);
  c.seed = 1;
  const RunResult r1 = run_verify(c);
  const DiffResult d = diff_reports(r0.report, r1.report);
  CHECK(d.verdicts_identical);
  bool benign = false;
  for (const auto& l : d.lines) benign = benign || l.find("benign") != std::string::npos;
  CHECK(benign);

  const RunResult s3 = run_verify(finite("sym3", "A3", "(12)", {"faithful", "isometry"}));
  const RunResult s4 = run_verify(finite("sym4", "(1234)", "stab4", {"faithful", "isometry"}));
  const DiffResult d2 = diff_reports(s3.report, s4.report);
  CHECK_FALSE(d2.verdicts_identical);
  bool iso = false;
  for (const auto& l : d2.lines) iso = iso || l.rfind("! isometric", 0) == 0;
  CHECK(iso);

  CHECK_THROWS_AS(diff_reports(nlohmann::json::object(), s3.report), ConfigError);
}

TEST_CASE("markdown rendering") {
  const RunResult r = run_verify(finite("sym3", "A3", "(12)", {"faithful", "isometry", "classify"}));
  const std::string md = render_markdown(r.report);
  CHECK(md.find("| faithful | classification | yes |") != std::string::npos);
  CHECK(md.find("Overall: **pass**") != std::string::npos);
  CHECK(md == render_markdown(report_body(r.report)));
}

TEST_CASE("factorize listing") {
  const auto g = resolve_group([] {
    RunConfig c;
    c.preset = "sym4";
    return c;
  }());
  const std::string s = factorize_listing(g, true);
  CHECK(s.find("G1 = <(1234)> order 4 abelian | G2 = ") != std::string::npos);
  CHECK(split_csv(" a, b ,,c") == std::vector<std::string>{"a", "b", "c"});
}
