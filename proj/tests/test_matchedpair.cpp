#include <cmath>

#include "doctest.h"

#include "bqg/analytic.hpp"
#include "bqg/matchedpair.hpp"

using namespace bqg;

namespace {

FiniteMatchedPair pair_of(std::string_view group, std::string_view g1, std::string_view g2) {
  const auto G = std::make_shared<const FiniteGroup>(preset(group));
  return derive_actions(ExactFactorization{G, select_subgroup(G, g1), select_subgroup(G, g2)});
}

}  // namespace

TEST_CASE("direct product has trivial actions") {
  const FiniteMatchedPair mp = pair_of("z2xz3", "factor1", "factor2");
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h) {
      CHECK(mp.alpha(g, h) == h);
      CHECK(mp.beta(h, g) == g);
    }
  CHECK(alpha_triviality(mp).trivial);
  CHECK(beta_triviality(mp).trivial);
  CHECK(verify_compatibility(mp).pass());
}

TEST_CASE("sym3 with G1 = A3: alpha trivial, beta is conjugation") {
  const FiniteMatchedPair mp = pair_of("sym3", "A3", "(12)");
  const FiniteGroup& G = *mp.fact.G;
  CHECK(alpha_triviality(mp).trivial);
  CHECK_FALSE(beta_triviality(mp).trivial);
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h) {
      const int hh = mp.fact.G2.members[h];
      const int conj = G.mul(G.mul(G.inv(hh), mp.fact.G1.members[g]), hh);
      CHECK(mp.fact.G1.members[mp.beta(h, g)] == conj);
    }
}

TEST_CASE("defining relation holds by enumeration") {
  // j(alpha_g(h)) i(beta_h(g)) = i(g) j(h) with j(h) = h^-1
  for (auto [grp, a, b] : {std::tuple{"sym3", "A3", "(12)"}, std::tuple{"sym3", "(12)", "A3"},
                           std::tuple{"sym4", "(1234)", "stab4"}, std::tuple{"sym4", "stab4", "(1234)"}}) {
    const FiniteMatchedPair mp = pair_of(grp, a, b);
    const FiniteGroup& G = *mp.fact.G;
    for (int g = 0; g < mp.n1; ++g)
      for (int h = 0; h < mp.n2; ++h)
        CHECK(G.mul(mp.j(mp.alpha(g, h)), mp.i(mp.beta(h, g))) == G.mul(mp.i(g), mp.j(h)));
  }
}

TEST_CASE("sym4 pair: both actions non-trivial, relations hold") {
  const FiniteMatchedPair mp = pair_of("sym4", "(1234)", "stab4");
  CHECK(mp.n1 == 4);
  CHECK(mp.n2 == 6);
  const auto at = alpha_triviality(mp), bt = beta_triviality(mp);
  CHECK_FALSE(at.trivial);
  CHECK_FALSE(bt.trivial);
  CHECK_FALSE(at.witness.empty());
  const VerificationReport r = verify_compatibility(mp);
  CHECK(r.pass());
  CHECK(r.verdicts.size() == 6);
}

TEST_CASE("corrupted alpha table is caught with a named tuple") {
  FiniteMatchedPair mp = pair_of("sym4", "(1234)", "stab4");
  const int g = 1, h = 2;
  mp.alpha_table[g * mp.n2 + h] = (mp.alpha_table[g * mp.n2 + h] + 1) % mp.n2;
  const VerificationReport r = verify_compatibility(mp);
  CHECK_FALSE(r.pass());
  bool witnessed = false;
  for (const auto& v : r.verdicts)
    if (!v.pass) witnessed = witnessed || (v.witness && !v.witness->empty());
  CHECK(witnessed);
}

TEST_CASE("analytic closed forms") {
  const AnalyticMatchedPair axb = analytic_preset("axb");
  for (double g : {-3.0, 0.5, 2.0, 7.0}) CHECK((*axb.alpha({g, 0}, {1, 0}))[0] == doctest::Approx(1.0));
  CHECK((*axb.beta({2, 0}, {3, 0}))[0] == doctest::Approx(5.0));
  CHECK_FALSE(axb.beta({1, 0}, {0, 0}).has_value());

  const AnalyticMatchedPair split = analytic_preset("split");
  const auto b = split.beta({-2, 0}, {1, 1});
  REQUIRE(b.has_value());
  CHECK((*b)[0] == doctest::Approx(1.0));
  CHECK((*b)[1] == doctest::Approx(-1.0));
  const auto b2 = split.beta({0.5, 0}, {1, 1});
  CHECK((*b2)[0] == doctest::Approx(1.5));
  CHECK((*b2)[1] == doctest::Approx(1.0));
}

TEST_CASE("sampled compatibility") {
  SampledConfig cfg;
  for (const char* name : {"axb", "split"}) {
    const PropertyVerdict v = verify_compatibility_sampled(analytic_preset(name), cfg);
    CHECK_MESSAGE(v.pass, name);
    CHECK(v.residual <= 1e-9);
  }
  AnalyticMatchedPair broken = analytic_preset("axb");
  broken.beta = [](const Point&, const Point& g) -> std::optional<Point> { return g; };
  cfg.samples = 2000;
  const PropertyVerdict v = verify_compatibility_sampled(broken, cfg);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.has_value());

  AnalyticMatchedPair undefined = analytic_preset("axb");
  undefined.alpha = [](const Point&, const Point&) -> std::optional<Point> { return std::nullopt; };
  CHECK_THROWS_AS(verify_compatibility_sampled(undefined, cfg), std::runtime_error);
}

TEST_CASE("sampling is reproducible") {
  SampledConfig cfg;
  cfg.samples = 500;
  cfg.seed = 42;
  const auto a = verify_compatibility_sampled(analytic_preset("axb"), cfg);
  cfg.jobs = 4;
  const auto b = verify_compatibility_sampled(analytic_preset("axb"), cfg);
  CHECK(a.residual == b.residual);
  CHECK(a.cross_check == b.cross_check);
}

TEST_CASE("analytic triviality witnesses") {
  const AnalyticMatchedPair axb = analytic_preset("axb");
  SampledConfig cfg;
  CHECK(analytic_triviality_witness(axb, false, cfg).found);
  CHECK(analytic_triviality_witness(axb, true, cfg).found);
  const auto b = axb.beta({2, 0}, {3, 0});
  CHECK(std::abs((*b)[0] - 3.0) > 1.0);
}

TEST_CASE("Radon-Nikodym derivative") {
  const RNDerivative fd(analytic_preset("axb"));
  const RNDerivative closed(analytic_preset("axb"), true);
  SampledConfig cfg;
  int positive = 0, checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto rng = sample_rng(0, i);
    const Point g = fd.pair().sample1(rng), s = fd.pair().sample2(rng);
    const auto t = fd.theta(g, s);
    if (!t) continue;
    ++checked;
    positive += *t > 0.0;
    const auto c = closed.theta(g, s);
    REQUIRE(c.has_value());
    CHECK(*t == doctest::Approx(*c).epsilon(1e-6));
  }
  CHECK(positive == checked);
  CHECK(checked > 900);
  for (double g : {0.3, 2.0, -5.0}) CHECK(*fd.theta({g, 0}, {1, 0}) == doctest::Approx(1.0).epsilon(1e-9));

  for (const char* name : {"axb", "split"}) {
    const RNDerivative rn(analytic_preset(name));
    const Point s = std::string(name) == "axb" ? Point{1.7, 0} : Point{0.6, 0};
    const ChangeOfVariables cv = rn_self_test(rn, s);
    CHECK_MESSAGE(cv.rel_error <= 1e-4, name);
  }
}
