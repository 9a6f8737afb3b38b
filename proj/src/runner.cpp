#include "bqg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "bqg/action.hpp"
#include "bqg/analytic.hpp"
#include "bqg/bicrossed.hpp"
#include "bqg/c0decay.hpp"
#include "bqg/matchedpair.hpp"

namespace bqg {

using nlohmann::json;

const std::vector<std::string>& finite_checks() {
  static const std::vector<std::string> c{"compat",  "pentagon", "cancellation", "comodule",
                                          "podles",  "haar",     "ergodic",      "faithful",
                                          "isometry", "classify", "dual"};
  return c;
}

const std::vector<std::string>& analytic_checks() {
  static const std::vector<std::string> c{"compat", "isometry", "c0decay"};
  return c;
}

namespace {

// checks that need the canonical action, hence an abelian G1
const std::set<std::string> kGammaChecks{"comodule", "podles", "ergodic", "faithful", "isometry", "classify"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> select_checks(const RunConfig& cfg, bool analytic, bool g1_abelian) {
  const auto& allowed = analytic ? analytic_checks() : finite_checks();
  std::set<std::string> want;
  bool all = false;
  for (const auto& c : cfg.checks) {
    if (c == "all") {
      all = true;
      continue;
    }
    const bool known = std::count(finite_checks().begin(), finite_checks().end(), c) ||
                       std::count(analytic_checks().begin(), analytic_checks().end(), c);
    if (!known) throw ConfigError("unknown check '" + c + "'");
    if (!std::count(allowed.begin(), allowed.end(), c))
      throw ConfigError(fmt::format("check '{}' does not apply to {} targets", c, analytic ? "analytic" : "finite"));
    if (!analytic && !g1_abelian && kGammaChecks.count(c))
      throw ConfigError(fmt::format("check '{}' needs an abelian G1", c));
    want.insert(c);
  }
  if (cfg.checks.empty()) throw ConfigError("no checks selected");
  std::vector<std::string> out;
  for (const auto& c : allowed)
    if (want.count(c) || (all && (analytic || g1_abelian || !kGammaChecks.count(c)))) out.push_back(c);
  return out;
}

json verdict_list(const std::vector<PropertyVerdict>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.to_json());
  return a;
}

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

json config_echo(const RunConfig& cfg, const std::vector<std::string>& checks) {
  return json{{"checks", checks}, {"tol", cfg.tol}, {"seed", cfg.seed}, {"samples", cfg.samples}};
}

struct Collector {
  std::vector<PropertyVerdict> verdicts;
  json timing = json::object();

  template <class F>
  void run(const std::string& check, F&& body) {
    Timer t;
    body();
    timing[check] = t.seconds();
  }
  void add(PropertyVerdict v) { verdicts.push_back(std::move(v)); }
  void add(const VerificationReport& r) {
    for (const auto& v : r.verdicts) verdicts.push_back(v);
  }
};

PropertyVerdict commutativity_verdict(const FiniteMatchedPair& mp, const Commutativity& A, const Commutativity& Ahat) {
  // G1 abelian here: A commutes iff alpha is trivial; Ahat commutes iff beta is
  // trivial and G2 is abelian.
  const TrivialityWitness at = alpha_triviality(mp), bt = beta_triviality(mp);
  const bool predA = at.trivial;
  const bool predAhat = bt.trivial && mp.g2.is_abelian();
  const bool ok = predA == A.commutative && predAhat == Ahat.commutative;
  std::optional<std::string> witness;
  if (!ok)
    witness = fmt::format("predicted A {}, Ahat {}; computed A {}, Ahat {}", predA ? "commutative" : "non-commutative",
                          predAhat ? "commutative" : "non-commutative", A.commutative ? "commutative" : "non-commutative",
                          Ahat.commutative ? "commutative" : "non-commutative");
  return PropertyVerdict{"commutativity", ok, static_cast<double>((predA != A.commutative) + (predAhat != Ahat.commutative)), witness,
                         fmt::format("alpha {}, beta {}, G2 {}; A {} (max commutator {}), Ahat {} (max commutator {})",
                                     at.trivial ? "trivial" : "non-trivial", bt.trivial ? "trivial" : "non-trivial",
                                     mp.g2.is_abelian() ? "abelian" : "non-abelian",
                                     A.commutative ? "commutative" : "non-commutative", sci(A.max_commutator),
                                     Ahat.commutative ? "commutative" : "non-commutative", sci(Ahat.max_commutator))};
}

PropertyVerdict dichotomy_verdict(const FiniteMatchedPair& mp, const FaithfulResult& fr) {
  const TrivialityWitness bt = beta_triviality(mp);
  const bool predicted = !bt.trivial;
  const bool ok = predicted == fr.verdict.pass;
  std::optional<std::string> witness;
  if (!ok) {
    const auto ker = beta_kernel(mp);
    std::string names;
    for (int h : ker) names += (names.empty() ? "" : ", ") + mp.name2(h);
    witness = fmt::format("beta {} but the action is {}faithful (generated rank {}); kernel of beta = {{{}}}",
                          bt.trivial ? "trivial" : "non-trivial", fr.verdict.pass ? "" : "not ", fr.generated_rank, names);
  }
  return PropertyVerdict{"faithful_dichotomy", ok, ok ? 0.0 : 1.0, witness,
                         "faithful iff beta non-trivial, checked against the generated *-algebra"};
}

PropertyVerdict isometry_consistency(bool alpha_trivial, bool beta_trivial, const PropertyVerdict& iso) {
  if (!alpha_trivial && !beta_trivial)
    return PropertyVerdict{"isometry_consistency", true, 0.0, std::nullopt,
                           "alpha and beta both non-trivial; no prediction"};
  const bool ok = iso.pass;
  return PropertyVerdict{"isometry_consistency", ok, ok ? 0.0 : 1.0,
                         ok ? std::nullopt : std::optional<std::string>("criterion fails although " +
                                                                        std::string(alpha_trivial ? "alpha" : "beta") +
                                                                        " is trivial"),
                         fmt::format("{} trivial, so the criterion must hold", alpha_trivial ? "alpha" : "beta")};
}

RunResult run_finite(const RunConfig& cfg) {
  const auto G = resolve_group(cfg);
  if (!cfg.g1 || !cfg.g2) throw ConfigError("finite targets need --g1 and --g2");
  ExactFactorization fact;
  try {
    fact = ExactFactorization{G, select_subgroup(G, *cfg.g1), select_subgroup(G, *cfg.g2)};
    validate_factorization(fact);
  } catch (const GroupError& e) {
    throw ConfigError(e.what());
  }
  const bool g1_abelian = fact.G1.is_abelian();
  const auto checks = select_checks(cfg, false, g1_abelian);
  auto has = [&](const char* c) { return std::count(checks.begin(), checks.end(), c) > 0; };

  const auto mp = std::make_shared<const FiniteMatchedPair>(derive_actions(fact));
  Collector out;

  const bool needW = checks.size() > 1 || !has("compat");
  const bool needAlg = has("cancellation") || has("haar") || has("podles") || has("faithful") || has("classify") ||
                       has("dual") || has("comodule");
  const bool needGamma = has("comodule") || has("podles") || has("ergodic") || has("faithful") || has("classify");

  std::optional<MultiplicativeUnitary> W;
  std::optional<BicrossedAlgebra> alg;
  std::optional<ActionGamma> ag;
  Timer setup;
  if (needW) W = build_W(mp);
  if (needAlg) alg = slice_algebras(*W, cfg.tol);
  if (needGamma) ag = build_gamma(mp, *W);
  out.timing["setup"] = setup.seconds();

  std::optional<PropertyVerdict> faithful, isometric;
  std::optional<FaithfulResult> fr;
  auto ensure_faithful = [&] {
    if (!fr) fr = check_faithful(*ag, alg->A, cfg.tol);
  };
  auto ensure_isometry = [&] {
    if (!isometric) isometric = check_isometry_criterion(*mp);
  };

  for (const auto& c : checks) {
    out.run(c, [&] {
      if (c == "compat") {
        out.add(verify_compatibility(*mp));
      } else if (c == "pentagon") {
        out.add(check_pentagon(*W));
      } else if (c == "cancellation") {
        out.add(check_star_algebra(alg->A, "A", cfg.tol));
        out.add(check_presentation(*alg, cfg.tol));
        out.add(check_comult(*alg));
        out.add(check_cancellation(alg->A, W->perm, cfg.tol));
      } else if (c == "comodule") {
        out.add(check_gamma_constructions(*ag, *W, *alg));
        out.add(check_comodule(*ag, *W));
      } else if (c == "podles") {
        out.add(check_podles(*ag, alg->A, cfg.tol));
      } else if (c == "haar") {
        out.add(check_haar(*alg, haar_weight(*alg), cfg.seed, cfg.tol));
      } else if (c == "ergodic") {
        out.add(check_ergodic(*ag, cfg.tol));
      } else if (c == "faithful") {
        ensure_faithful();
        out.add(fr->verdict);
        out.add(dichotomy_verdict(*mp, *fr));
      } else if (c == "isometry") {
        ensure_isometry();
        out.add(*isometric);
        out.add(isometry_consistency(alpha_triviality(*mp).trivial, beta_triviality(*mp).trivial, *isometric));
      } else if (c == "classify") {
        ensure_faithful();
        ensure_isometry();
        const Commutativity cA = commutativity(alg->A), cAhat = commutativity(alg->Ahat);
        out.add(classify(ClassifyInput{&fr->verdict, &*isometric, cA, cAhat}));
        out.add(commutativity_verdict(*mp, cA, cAhat));
      } else if (c == "dual") {
        out.add(dual_checks(*alg, cfg.tol));
      }
    });
  }

  VerificationReport rep{out.verdicts};
  json target{{"kind", "finite"},
              {"group", G->name()},
              {"order", G->order()},
              {"g1", fact.G1.label()},
              {"g2", fact.G2.label()},
              {"n1", mp->n1},
              {"n2", mp->n2},
              {"g1_abelian", g1_abelian}};
  if (cfg.group_path) target["group_file"] = *cfg.group_path;
  json report{{"schema", 1},
              {"tool_version", BQG_VERSION},
              {"target", target},
              {"config", config_echo(cfg, checks)},
              {"verdicts", verdict_list(out.verdicts)},
              {"overall", rep.pass()},
              {"runtime", {{"jobs", cfg.jobs}, {"timing", out.timing}}}};
  return {report, rep.pass()};
}

RunResult run_analytic(const RunConfig& cfg) {
  AnalyticMatchedPair p;
  try {
    p = analytic_preset(*cfg.analytic);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.g1 || cfg.g2) throw ConfigError("--g1/--g2 do not apply to analytic targets");
  const auto checks = select_checks(cfg, true, p.g1_abelian);
  const SampledConfig sc{cfg.samples, cfg.seed, cfg.tol, cfg.jobs};
  Collector out;
  for (const auto& c : checks) {
    out.run(c, [&] {
      if (c == "compat") {
        out.add(verify_compatibility_sampled(p, sc));
      } else if (c == "isometry") {
        const PropertyVerdict iso = check_isometry_criterion(p, sc);
        out.add(iso);
        const bool at = !analytic_triviality_witness(p, true, sc).found;
        const bool bt = !analytic_triviality_witness(p, false, sc).found;
        out.add(isometry_consistency(at, bt, iso));
      } else if (c == "c0decay") {
        DecayConfig dc;
        dc.jobs = cfg.jobs;
        out.add(c0_decay_verdict(c0_decay(p, dc), dc));
      }
    });
  }
  VerificationReport rep{out.verdicts};
  json report{{"schema", 1},
              {"tool_version", BQG_VERSION},
              {"target", {{"kind", "analytic"}, {"name", p.name}, {"g1_abelian", p.g1_abelian}}},
              {"config", config_echo(cfg, checks)},
              {"verdicts", verdict_list(out.verdicts)},
              {"overall", rep.pass()},
              {"runtime", {{"jobs", cfg.jobs}, {"timing", out.timing}}}};
  return {report, rep.pass()};
}

std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

std::shared_ptr<const FiniteGroup> resolve_group(const RunConfig& cfg) {
  if (cfg.preset && cfg.group_path) throw ConfigError("--preset and --group are mutually exclusive");
  try {
    if (cfg.preset) return std::make_shared<const FiniteGroup>(preset(*cfg.preset));
    if (cfg.group_path) return std::make_shared<const FiniteGroup>(load_group_file(*cfg.group_path));
  } catch (const GroupError& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid group JSON: ") + e.what());
  }
  throw ConfigError("no group given (use --preset or --group)");
}

RunResult run_verify(const RunConfig& cfg) {
  const int targets = (cfg.preset || cfg.group_path ? 1 : 0) + (cfg.analytic ? 1 : 0);
  if (targets != 1) throw ConfigError("give exactly one target: --preset, --group or --analytic");
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.samples <= 0) throw ConfigError("--samples must be positive");
  return cfg.analytic ? run_analytic(cfg) : run_finite(cfg);
}

json report_body(const json& report) {
  json b = report;
  b.erase("runtime");
  return b;
}

std::string render_markdown(const json& r) {
  std::string s = "# Verification report\n\n";
  const json& t = r.at("target");
  if (t.at("kind") == "finite")
    s += fmt::format("Target: `{}` (order {}), G1 = `{}`, G2 = `{}`\n\n", scalar(t.at("group")), scalar(t.at("order")),
                     scalar(t.at("g1")), scalar(t.at("g2")));
  else
    s += fmt::format("Target: analytic `{}`\n\n", scalar(t.at("name")));
  const json& c = r.at("config");
  std::string checks;
  for (const auto& x : c.at("checks")) checks += (checks.empty() ? "" : ", ") + x.get<std::string>();
  s += fmt::format("Checks: {}; tol {}; seed {}; samples {}\n\n", checks, scalar(c.at("tol")), scalar(c.at("seed")),
                   scalar(c.at("samples")));
  s += "| property | kind | result | residual | witness |\n|---|---|---|---|---|\n";
  for (const auto& v : r.at("verdicts")) {
    const bool cls = v.value("kind", "") == "classification";
    const std::string result = cls ? (v.at("pass").get<bool>() ? "yes" : "no") : (v.at("pass").get<bool>() ? "pass" : "FAIL");
    std::string w = v.value("witness", "");
    std::replace(w.begin(), w.end(), '|', '/');
    s += fmt::format("| {} | {} | {} | {} | {} |\n", scalar(v.at("property")), v.value("kind", "invariant"), result,
                     scalar(v.at("residual")), w);
  }
  s += "\n";
  for (const auto& v : r.at("verdicts"))
    if (v.contains("cross_check"))
      s += fmt::format("- {}: {}\n", scalar(v.at("property")), scalar(v.at("cross_check")));
  s += fmt::format("\nOverall: **{}** (tool {})\n", r.at("overall").get<bool>() ? "pass" : "FAIL",
                   scalar(r.at("tool_version")));
  return s;
}

DiffResult diff_reports(const json& a, const json& b) {
  for (const json* r : {&a, &b})
    if (!r->is_object() || !r->contains("schema") || !r->contains("verdicts") || !r->at("verdicts").is_array() ||
        !r->contains("overall"))
      throw ConfigError("malformed report");
  if (a.at("schema") != b.at("schema")) throw ConfigError("reports have different schema versions");

  DiffResult d;
  for (const char* key : {"tool_version", "target", "config"})
    if (a.value(key, json()) != b.value(key, json()))
      d.lines.push_back(fmt::format("~ {}: {} -> {}", key, a.value(key, json()).dump(), b.value(key, json()).dump()));

  std::map<std::string, json> va, vb;
  std::vector<std::string> order;
  for (const auto& v : a.at("verdicts")) {
    va[v.at("property")] = v;
    order.push_back(v.at("property"));
  }
  for (const auto& v : b.at("verdicts")) {
    if (!va.count(v.at("property"))) order.push_back(v.at("property"));
    vb[v.at("property")] = v;
  }
  for (const auto& p : order) {
    if (!vb.count(p)) {
      d.lines.push_back(fmt::format("- {}: only in the first report", p));
      d.verdicts_identical = false;
      continue;
    }
    if (!va.count(p)) {
      d.lines.push_back(fmt::format("+ {}: only in the second report", p));
      d.verdicts_identical = false;
      continue;
    }
    const json &x = va[p], &y = vb[p];
    if (x.at("pass") != y.at("pass")) {
      d.lines.push_back(fmt::format("! {}: pass {} -> {}", p, x.at("pass").dump(), y.at("pass").dump()));
      d.verdicts_identical = false;
      continue;
    }
    if (x.value("residual", json()) != y.value("residual", json()))
      d.lines.push_back(fmt::format("  {}: residual {} -> {} (benign, same verdict)", p, x.value("residual", json()).dump(),
                                    y.value("residual", json()).dump()));
    if (x.value("witness", json()) != y.value("witness", json()))
      d.lines.push_back(fmt::format("  {}: witness differs (benign, same verdict)", p));
    if (x.value("cross_check", json()) != y.value("cross_check", json()))
      d.lines.push_back(fmt::format("  {}: cross_check differs (benign, same verdict)", p));
  }
  if (a.at("overall") != b.at("overall")) {
    d.lines.push_back(fmt::format("! overall: {} -> {}", a.at("overall").dump(), b.at("overall").dump()));
    d.verdicts_identical = false;
  }
  return d;
}

std::string factorize_listing(std::shared_ptr<const FiniteGroup> g, bool require_abelian_g1) {
  const auto fs = exact_factorizations(g, require_abelian_g1);
  std::string s = fmt::format("{}: order {}, {} exact factorization{}{}\n", g->name(), g->order(), fs.size(),
                              fs.size() == 1 ? "" : "s", require_abelian_g1 ? " with abelian G1" : "");
  for (const auto& f : fs) {
    auto side = [](const Subgroup& h) {
      return fmt::format("{} order {}{}{}", h.label(), h.order(), h.is_abelian() ? " abelian" : "",
                         h.is_normal() ? " normal" : "");
    };
    s += fmt::format("{} G1 = {} | G2 = {}\n", f.G1.is_abelian() ? "*" : " ", side(f.G1), side(f.G2));
  }
  return s;
}

}  // namespace bqg
