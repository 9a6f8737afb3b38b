#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bqg/groups.hpp"

namespace bqg {

// Usage or configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> preset, group_path, analytic;
  std::optional<std::string> g1, g2;
  std::vector<std::string> checks{"all"};
  double tol = 1e-9;
  std::uint64_t seed = 0;
  long samples = 10000;
  int jobs = 1;
};

const std::vector<std::string>& finite_checks();
const std::vector<std::string>& analytic_checks();

// "a,b , c" -> {"a","b","c"}
std::vector<std::string> split_csv(const std::string& s);

// Group from --preset or --group; throws ConfigError.
std::shared_ptr<const FiniteGroup> resolve_group(const RunConfig& cfg);

struct RunResult {
  nlohmann::json report;
  bool pass = false;
};
// Throws ConfigError on an invalid target or check selection.
RunResult run_verify(const RunConfig& cfg);

// Report without the "runtime" member; this is what determinism refers to.
nlohmann::json report_body(const nlohmann::json& report);
std::string render_markdown(const nlohmann::json& report);

struct DiffResult {
  std::vector<std::string> lines;
  bool verdicts_identical = true;
};
// Throws ConfigError on a malformed report.
DiffResult diff_reports(const nlohmann::json& a, const nlohmann::json& b);

std::string factorize_listing(std::shared_ptr<const FiniteGroup> g, bool require_abelian_g1);

}  // namespace bqg
