#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include <fmt/format.h>

#include "bqg/parallel.hpp"
#include "bqg/runner.hpp"

namespace {

nlohmann::json read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bqg::ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw bqg::ConfigError(path + ": " + e.what());
  }
}

int jobs_from_env(int flag) {
  if (const char* env = std::getenv("BQG_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw bqg::ConfigError(fmt::format("BQG_JOBS must be a positive integer, got '{}'", env));
  }
  return flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicrossed-product quantum group verifier"};
  app.set_version_flag("--version", BQG_VERSION);
  app.require_subcommand(1);

  bqg::RunConfig cfg;
  std::string checks = "all", format = "json", out_path;
  int jobs = bqg::default_jobs();
  bool require_abelian = false;

  auto add_group_opts = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "preset group: trivial, cyclicN, dihedralN, symN, z2xz3, ...");
    sub->add_option("--group", cfg.group_path, "group multiplication table as JSON");
  };

  auto* fac = app.add_subcommand("factorize", "list the exact factorizations of a finite group");
  add_group_opts(fac);
  fac->add_flag("--require-abelian-g1", require_abelian, "only factorizations with abelian G1");

  auto* ver = app.add_subcommand("verify", "run verification checks on a factorization or analytic pair");
  add_group_opts(ver);
  ver->add_option("--g1", cfg.g1, "first factor: generator names or a role such as A3, stab4");
  ver->add_option("--g2", cfg.g2, "second factor");
  ver->add_option("--analytic", cfg.analytic, "analytic pair: axb | split");
  ver->add_option("--checks", checks, "comma separated checks, or all")->capture_default_str();
  ver->add_option("--tol", cfg.tol, "span and sampling tolerance")->capture_default_str();
  ver->add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  ver->add_option("--samples", cfg.samples, "samples for analytic checks")->capture_default_str();
  ver->add_option("--out", out_path, "write the report to this file instead of stdout");
  ver->add_option("--format", format, "json | md")->check(CLI::IsMember({"json", "md"}))->capture_default_str();
  ver->add_option("--jobs", jobs, "worker threads (BQG_JOBS overrides)")->check(CLI::PositiveNumber);

  std::string diff_a, diff_b;
  auto* dif = app.add_subcommand("diff", "compare two verification reports, ignoring timing");
  dif->add_option("first", diff_a, "report JSON")->required();
  dif->add_option("second", diff_b, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fac->parsed()) {
      std::cout << bqg::factorize_listing(bqg::resolve_group(cfg), require_abelian);
      return 0;
    }
    if (ver->parsed()) {
      cfg.checks = bqg::split_csv(checks);
      cfg.jobs = jobs_from_env(jobs);
      const bqg::RunResult r = bqg::run_verify(cfg);
      const std::string text = format == "md" ? bqg::render_markdown(r.report) : r.report.dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream o(out_path);
        if (!o) throw bqg::ConfigError("cannot write " + out_path);
        o << text;
      }
      return r.pass ? 0 : 1;
    }
    if (dif->parsed()) {
      const bqg::DiffResult d = bqg::diff_reports(read_report(diff_a), read_report(diff_b));
      for (const auto& l : d.lines) std::cout << l << "\n";
      return d.verdicts_identical ? 0 : 1;
    }
  } catch (const bqg::ConfigError& e) {
    std::cerr << "bqg: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "bqg: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
