// Acceptance run: one line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "bqg/action.hpp"
#include "bqg/c0decay.hpp"
#include "bqg/parallel.hpp"

using namespace bqg;

namespace {

struct PresetPair {
  const char *group, *g1, *g2;
};

const std::vector<PresetPair> kPairs{
    {"trivial", "trivial", "whole"}, {"z2xz3", "factor1", "factor2"}, {"cyclic6", "2", "3"},
    {"sym3", "A3", "(12)"},          {"sym3", "(12)", "A3"},          {"sym4", "(1234)", "stab4"},
};

const std::vector<const char*> kGroups{"trivial", "cyclic2", "cyclic4", "cyclic6", "z2xz3", "dihedral4", "sym3", "sym4"};

struct Built {
  std::string label;
  std::shared_ptr<const FiniteMatchedPair> mp;
  MultiplicativeUnitary W;
  BicrossedAlgebra alg;
  ActionGamma ag;
};

Built build(const ExactFactorization& f, std::string label) {
  auto mp = std::make_shared<const FiniteMatchedPair>(derive_actions(f));
  auto W = build_W(mp);
  auto alg = slice_algebras(W);
  auto ag = build_gamma(mp, W);
  return Built{std::move(label), mp, W, alg, ag};
}

Built build(const PresetPair& p) {
  const auto G = std::make_shared<const FiniteGroup>(preset(p.group));
  return build(ExactFactorization{G, select_subgroup(G, p.g1), select_subgroup(G, p.g2)},
               fmt::format("{} ({}, {})", p.group, p.g1, p.g2));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Outcome()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, fmt::format("exception: {}", e.what())};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
}

int podles_rank(const PropertyVerdict& v) {
  std::smatch m;
  static const std::regex re(R"(= (\d+) =)");
  if (v.cross_check && std::regex_search(*v.cross_check, m, re)) return std::stoi(m[1]);
  return -1;
}

}  // namespace

int main() {
  const int jobs = default_jobs();
  std::vector<Built> pairs(kPairs.size());
  parallel_for(kPairs.size(), jobs, [&](std::size_t i) { pairs[i] = build(kPairs[i]); });

  criterion(1, "pentagon, exact on all preset pairs (< 5 s)", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    long mismatched = 0;
    std::string bad;
    for (const auto& b : pairs) {
      const PropertyVerdict v = check_pentagon(b.W);
      mismatched += static_cast<long>(v.residual);
      if (!v.pass) bad += " " + b.label;
    }
    const double t = seconds_since(t0);
    return Outcome{mismatched == 0 && bad.empty() && t < 5.0,
                   fmt::format("{} mismatched points over {} pairs in {:.2f} s{}", mismatched, pairs.size(), t, bad)};
  });

  criterion(2, "matched-pair relations (exhaustive finite; 1e4 samples, seed 0, tol 1e-9 analytic)", [&] {
    std::string detail;
    bool ok = true;
    for (const auto& b : pairs) ok = verify_compatibility(*b.mp).pass() && ok;
    detail = fmt::format("{} finite pairs {}", pairs.size(), ok ? "exact" : "FAILED");
    SampledConfig cfg;
    cfg.samples = 10000;
    cfg.seed = 0;
    cfg.tol = 1e-9;
    cfg.jobs = jobs;
    for (const char* name : {"axb", "split"}) {
      const PropertyVerdict v = verify_compatibility_sampled(analytic_preset(name), cfg);
      ok = ok && v.pass;
      detail += fmt::format("; {}: {}", name, v.cross_check.value_or(""));
    }
    return Outcome{ok, detail};
  });

  criterion(3, "Podles rank = dim(C) dim(A), tol 1e-9 (sym3 <(12)> = 12, sym4 = 96, < 60 s)", [&] {
    bool ok = true;
    std::string detail;
    for (const auto& [idx, want] : {std::pair{4, 12}, std::pair{5, 96}}) {
      const auto& b = pairs[idx];
      const auto t0 = std::chrono::steady_clock::now();
      const PropertyVerdict v = check_podles(b.ag, b.alg.A, 1e-9);
      const double t = seconds_since(t0);
      const int r = podles_rank(v);
      ok = ok && v.pass && r == want && t < 60.0;
      detail += fmt::format("{}{}: rank {} (want {}, {:.2f} s)", detail.empty() ? "" : "; ", b.label, r, want, t);
    }
    return Outcome{ok, detail};
  });

  criterion(4, "ergodicity, fixed-point dimension 1 on every preset", [&] {
    bool ok = true;
    std::string bad;
    for (const auto& b : pairs) {
      const PropertyVerdict v = check_ergodic(b.ag);
      if (!v.pass) {
        ok = false;
        bad += fmt::format(" {} ({})", b.label, v.witness.value_or(""));
      }
    }
    return Outcome{ok, fmt::format("{} presets{}", pairs.size(), ok ? ", all dimension 1" : bad)};
  });

  criterion(5, "faithful iff beta non-trivial, all abelian-G1 factorizations", [&] {
    std::vector<ExactFactorization> all;
    std::vector<std::string> labels;
    for (const char* g : {"sym3", "sym4", "cyclic6", "z2xz3"}) {
      const auto G = std::make_shared<const FiniteGroup>(preset(g));
      for (auto& f : exact_factorizations(G, true)) {
        labels.push_back(fmt::format("{} ({}, {})", g, f.G1.label(), f.G2.label()));
        all.push_back(std::move(f));
      }
    }
    std::vector<int> agree(all.size());
    std::vector<std::string> note(all.size());
    parallel_for(all.size(), jobs, [&](std::size_t i) {
      const Built b = build(all[i], labels[i]);
      const FaithfulResult fr = check_faithful(b.ag, b.alg.A);
      const bool beta_nontrivial = !beta_triviality(*b.mp).trivial;
      agree[i] = fr.verdict.pass == beta_nontrivial;
      note[i] = fmt::format("{}: faithful {} (rank {} of {}), beta {}", labels[i], fr.verdict.pass ? "yes" : "no",
                            fr.generated_rank, b.alg.A.rank(), beta_nontrivial ? "non-trivial" : "trivial");
    });
    int n_agree = 0;
    std::string bad;
    for (std::size_t i = 0; i < all.size(); ++i) {
      n_agree += agree[i];
      if (!agree[i]) bad += "\n      " + note[i];
    }
    return Outcome{n_agree == static_cast<int>(all.size()),
                   fmt::format("{}/{} factorizations agree{}", n_agree, all.size(), bad)};
  });

  criterion(6, "isometry criterion and faithful+isometric => commutative", [&] {
    bool ok = true;
    std::vector<std::string> parts;
    int violations = 0;
    for (const auto& b : pairs) {
      const bool a_triv = alpha_triviality(*b.mp).trivial, b_triv = beta_triviality(*b.mp).trivial;
      const PropertyVerdict iso = check_isometry_criterion(*b.mp);
      if (a_triv || b_triv) {
        if (!iso.pass) {
          ok = false;
          parts.push_back(fmt::format("{} should be isometric", b.label));
        }
      } else if (iso.pass || !iso.witness) {
        ok = false;
        parts.push_back(fmt::format("{} should fail with a witness", b.label));
      }
      const FaithfulResult fr = check_faithful(b.ag, b.alg.A);
      if (fr.verdict.pass && iso.pass && !commutativity(b.alg.A).commutative) ++violations;
    }
    SampledConfig cfg;
    cfg.jobs = jobs;
    for (const char* name : {"axb", "split"}) {
      const PropertyVerdict v = check_isometry_criterion(analytic_preset(name), cfg);
      if (v.pass || !v.witness) {
        ok = false;
        parts.push_back(fmt::format("{} should fail with a witness", name));
      }
    }
    const std::string head = fmt::format("trivial-action presets isometric; sym4, axb, split fail with witness; "
                                         "{} faithful+isometric+non-commutative",
                                         violations);
    return Outcome{ok && violations == 0,
                   ok ? head : fmt::format("{}; {} violations", fmt::join(parts, "; "), violations)};
  });

  criterion(7, "Haar invariance <= 1e-9 on all presets", [&] {
    double worst = 0.0;
    for (const auto& b : pairs) {
      const VerificationReport r = check_haar(b.alg, haar_weight(b.alg));
      worst = std::max(worst, r.find("haar_left_invariance")->residual);
    }
    return Outcome{worst <= 1e-9, fmt::format("max |(id (x) phi)Delta(a) - phi(a)1| = {}", sci(worst))};
  });

  criterion(8, "slice space = presentation, residual <= 1e-9, rank |G1||G2|", [&] {
    bool ok = true;
    double worst = 0.0;
    std::string bad;
    for (const auto& b : pairs) {
      const PropertyVerdict v = check_presentation(b.alg, 1e-9);
      worst = std::max(worst, v.residual);
      if (!v.pass || b.alg.A.rank() != b.W.N) {
        ok = false;
        bad += " " + b.label;
      }
    }
    return Outcome{ok && worst <= 1e-9, fmt::format("max span residual {} over {} presets{}", sci(worst), pairs.size(), bad)};
  });

  criterion(9, "C0 decay on axb: |D(p)| strictly decreasing at p = 8..128, self-test 1e-6 (< 120 s)", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    DecayConfig cfg;
    cfg.jobs = jobs;
    const DecayTable t = c0_decay(analytic_preset("axb"), cfg);
    const double secs = seconds_since(t0);
    const PropertyVerdict v = c0_decay_verdict(t, cfg);
    std::vector<std::string> vals;
    for (std::size_t i = 0; i < t.p.size(); ++i)
      if (t.p[i] != 0.0) vals.push_back(fmt::format("{:g}:{}", t.p[i], sci(std::abs(t.D[i]))));
    double st = 0.0;
    for (double r : t.self_test_rel) st = std::max(st, r);
    return Outcome{t.strictly_decreasing && st <= 1e-6 && v.pass && secs < 120.0,
                   fmt::format("{}; self-test rel {}", fmt::join(vals, " "), sci(st))};
  });

  criterion(10, "DFT ||F*F - I|| <= 1e-12 on abelian subgroups", [&] {
    double worst = 0.0;
    int count = 0;
    for (const char* g : kGroups) {
      const auto G = std::make_shared<const FiniteGroup>(preset(g));
      for (const Subgroup& h : subgroups(G)) {
        if (!h.is_abelian()) continue;
        const ComplexMatrix F = dft_unitary(character_group(h.as_group()));
        const ComplexMatrix d = F.adjoint() * F - ComplexMatrix::Identity(F.rows(), F.cols());
        worst = std::max(worst, max_abs(d));
        ++count;
      }
    }
    return Outcome{worst <= 1e-12, fmt::format("{} abelian subgroups of {} groups, max defect {}", count, kGroups.size(), sci(worst))};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "NOT ACCEPTED", failures);
  return failures == 0 ? 0 : 1;
}
