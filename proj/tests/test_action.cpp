#include <cmath>

#include "doctest.h"
#include <fmt/format.h>

#include "bqg/action.hpp"
#include "bqg/c0decay.hpp"

using namespace bqg;

namespace {

struct Fixture {
  std::shared_ptr<const FiniteMatchedPair> mp;
  MultiplicativeUnitary W;
  BicrossedAlgebra alg;
  ActionGamma ag;
};

Fixture make(std::string_view group, std::string_view g1, std::string_view g2) {
  const auto G = std::make_shared<const FiniteGroup>(preset(group));
  auto mp = std::make_shared<const FiniteMatchedPair>(
      derive_actions(ExactFactorization{G, select_subgroup(G, g1), select_subgroup(G, g2)}));
  auto W = build_W(mp);
  auto alg = slice_algebras(W);
  auto ag = build_gamma(mp, W);
  return Fixture{mp, W, alg, ag};
}

}  // namespace

TEST_CASE("gamma basics") {
  const Fixture f = make("sym4", "(1234)", "stab4");
  CHECK(f.ag.gamma_perm[f.mp->g1.identity()].is_identity());
  for (const auto& p : f.ag.gamma_perm) CHECK(p.is_bijection());
  const PropertyVerdict v = check_gamma_constructions(f.ag, f.W, f.alg);
  CHECK(v.pass);
  CHECK(v.residual == 0.0);

  const auto G = std::make_shared<const FiniteGroup>(preset("sym3"));
  auto nonab = std::make_shared<const FiniteMatchedPair>(
      derive_actions(ExactFactorization{G, select_subgroup(G, "whole"), select_subgroup(G, "trivial")}));
  CHECK_THROWS_AS(build_gamma(nonab, build_W(nonab)), std::invalid_argument);
}

TEST_CASE("beta trivial: gamma is the group comultiplication on the G1 legs") {
  const Fixture f = make("sym3", "(12)", "A3");
  REQUIRE(beta_triviality(*f.mp).trivial);
  const int n1 = f.mp->n1, n2 = f.mp->n2, N = f.ag.N;
  for (int z = 0; z < n1; ++z)
    for (int g = 0; g < n1; ++g)
      for (int h = 0; h < n1; ++h)
        for (int t = 0; t < n2; ++t)
          CHECK(f.ag.gamma_perm[z](g * N + h * n2 + t) ==
                f.mp->g1.mul(g, z) * N + f.mp->g1.mul(h, z) * n2 + t);
  CHECK(check_gamma_constructions(f.ag, f.W, f.alg).pass);
}

TEST_CASE("comodule, Podles and ergodicity") {
  struct Case {
    const char *g, *a, *b;
    int podles;
  };
  for (const Case& c : {Case{"trivial", "trivial", "whole", 1}, Case{"sym3", "(12)", "A3", 12},
                        Case{"sym3", "A3", "(12)", 18}, Case{"z2xz3", "factor1", "factor2", 12},
                        Case{"sym4", "(1234)", "stab4", 96}}) {
    const Fixture f = make(c.g, c.a, c.b);
    const PropertyVerdict cm = check_comodule(f.ag, f.W);
    CHECK_MESSAGE(cm.pass, c.g, " ", c.a);
    CHECK(cm.residual <= 1e-10);
    const PropertyVerdict pd = check_podles(f.ag, f.alg.A);
    CHECK_MESSAGE(pd.pass, c.g, " ", c.a);
    CHECK(pd.cross_check->find(fmt::format("= {} =", c.podles)) != std::string::npos);
    const PropertyVerdict eg = check_ergodic(f.ag);
    CHECK_MESSAGE(eg.pass, c.g, " ", c.a);
  }
}

TEST_CASE("faithfulness") {
  const Fixture s3 = make("sym3", "(12)", "A3");
  const FaithfulResult r3 = check_faithful(s3.ag, s3.alg.A);
  CHECK_FALSE(r3.verdict.pass);
  CHECK(r3.generated_rank < 6);
  CHECK(r3.verdict.classification);

  const Fixture dp = make("z2xz3", "factor1", "factor2");
  CHECK_FALSE(check_faithful(dp.ag, dp.alg.A).verdict.pass);

  const Fixture s4 = make("sym4", "(1234)", "stab4");
  const FaithfulResult r4 = check_faithful(s4.ag, s4.alg.A);
  CHECK(r4.verdict.pass);
  CHECK(r4.generated_rank == 24);
  CHECK(r4.verdict.cross_check->find("agrees") != std::string::npos);

  const Fixture a3 = make("sym3", "A3", "(12)");
  CHECK(check_faithful(a3.ag, a3.alg.A).verdict.pass);
}

TEST_CASE("isometry criterion") {
  CHECK(check_isometry_criterion(*make("sym3", "A3", "(12)").mp).pass);
  CHECK(check_isometry_criterion(*make("z2xz3", "factor1", "factor2").mp).pass);
  CHECK(check_isometry_criterion(*make("sym3", "(12)", "A3").mp).pass);
  const PropertyVerdict s4 = check_isometry_criterion(*make("sym4", "(1234)", "stab4").mp);
  CHECK_FALSE(s4.pass);
  REQUIRE(s4.witness.has_value());
  CHECK(s4.cross_check->find("384") != std::string::npos);

  SampledConfig cfg;
  cfg.samples = 2000;
  for (const char* name : {"axb", "split"}) {
    const PropertyVerdict v = check_isometry_criterion(analytic_preset(name), cfg);
    CHECK_FALSE_MESSAGE(v.pass, name);
    CHECK(v.witness.has_value());
  }
}

TEST_CASE("classification consequence") {
  auto run = [](const Fixture& f) {
    const FaithfulResult fr = check_faithful(f.ag, f.alg.A);
    const PropertyVerdict iso = check_isometry_criterion(*f.mp);
    return classify(ClassifyInput{&fr.verdict, &iso, commutativity(f.alg.A), commutativity(f.alg.Ahat)});
  };
  const PropertyVerdict a3 = run(make("sym3", "A3", "(12)"));
  CHECK(a3.pass);
  CHECK(a3.cross_check->find("A commutative") != std::string::npos);
  CHECK(a3.cross_check->find("Ahat non-commutative") != std::string::npos);

  const PropertyVerdict s4 = run(make("sym4", "(1234)", "stab4"));
  CHECK(s4.pass);
  CHECK(s4.cross_check->find("no assertion") != std::string::npos);
  CHECK(s4.cross_check->find("Ahat non-commutative") != std::string::npos);

  CHECK(run(make("z2xz3", "factor1", "factor2")).cross_check->find("no assertion") != std::string::npos);

  // a faithful, isometric input with non-commutative A must be reported
  PropertyVerdict yes{"faithful", true, 0.0, std::nullopt, std::nullopt, true};
  PropertyVerdict iso{"isometric", true, 0.0, std::nullopt, std::nullopt, true};
  CHECK_FALSE(classify(ClassifyInput{&yes, &iso, Commutativity{false, 1.0}, Commutativity{true, 0.0}}).pass);
}

TEST_CASE("C0 decay on the ax+b pair") {
  const AnalyticMatchedPair axb = analytic_preset("axb");
  const DecayTable t = c0_decay(axb);
  REQUIRE(t.p.size() == 6);
  // reference values from an independent 1600-node Gauss-Legendre product rule
  const double ref[] = {2.0201022542255e-3, 8.645279822858e-4, 7.656368925571e-5,
                        3.846525445452e-6,  1.0743806576e-7,   1.38785999679e-9};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(t.D[i]) == doctest::Approx(ref[i]).epsilon(1e-7));
  CHECK(std::abs(t.D[0] - t.f_norm2 * t.eta_norm2) <= 1e-10 * t.f_norm2 * t.eta_norm2);
  CHECK(t.strictly_decreasing);
  for (double r : t.self_test_rel) CHECK(r <= 1e-6);
  CHECK(c0_decay_verdict(t).pass);
}

TEST_CASE("C0 decay: band maxima decrease") {
  const AnalyticMatchedPair axb = analytic_preset("axb");
  DecayConfig cfg;
  cfg.self_test_s.clear();
  double prev = INFINITY;
  for (int k = 3; k <= 7; ++k) {
    cfg.p_list.clear();
    const double lo = std::ldexp(1.0, k);
    for (int i = 0; i <= 8; ++i) cfg.p_list.push_back(lo * (1.0 + i / 8.0));
    const DecayTable t = c0_decay(axb, cfg);
    double band = 0.0;
    for (const auto& d : t.D) band = std::max(band, std::abs(d));
    CHECK_MESSAGE(band < prev, "band 2^", k);
    prev = band;
  }
}

TEST_CASE("C0 decay on the split pair uses the abelian factor") {
  const DecayTable t = c0_decay(analytic_preset("split"));
  CHECK(t.pair.find("exchanged") != std::string::npos);
  CHECK(std::abs(t.D[0] - t.f_norm2 * t.eta_norm2) <= 1e-8 * t.f_norm2 * t.eta_norm2);
  for (double r : t.self_test_rel) CHECK(r <= 1e-6);
}
