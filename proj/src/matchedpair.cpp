#include "bqg/matchedpair.hpp"

#include <fmt/format.h>

namespace bqg {

FiniteMatchedPair derive_actions(const ExactFactorization& fact) {
  validate_factorization(fact);
  const FiniteGroup& G = *fact.G;
  FiniteMatchedPair mp;
  mp.fact = fact;
  mp.g1 = fact.G1.as_group();
  mp.g2 = fact.G2.as_group();
  mp.n1 = fact.G1.order();
  mp.n2 = fact.G2.order();

  // theta^{-1}: x = i(g) j(h) = g h^{-1}  ->  (g, h)
  std::vector<std::pair<int, int>> theta_inv(G.order(), {-1, -1});
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h) theta_inv[G.mul(mp.i(g), mp.j(h))] = {g, h};

  mp.alpha_table.resize(static_cast<std::size_t>(mp.n1) * mp.n2);
  mp.beta_table.resize(static_cast<std::size_t>(mp.n1) * mp.n2);
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h) {
      // a^{-1} b = x with a in G2, b in G1, so x^{-1} = b^{-1} a = theta(b^{-1}, a^{-1})
      const int x = G.mul(mp.i(g), mp.j(h));
      const auto [p, q] = theta_inv[G.inv(x)];
      mp.beta_table[g * mp.n2 + h] = mp.g1.inv(p);
      mp.alpha_table[g * mp.n2 + h] = mp.g2.inv(q);
    }

  const VerificationReport rep = verify_compatibility(mp);
  for (const auto& v : rep.verdicts)
    if (!v.pass)
      throw std::logic_error(fmt::format("derived matched pair violates {}: {}", v.property, v.witness.value_or("?")));
  return mp;
}

VerificationReport verify_compatibility(const FiniteMatchedPair& mp) {
  const FiniteGroup& G = *mp.fact.G;
  const FiniteGroup& A = mp.g1;
  const FiniteGroup& B = mp.g2;
  const int n1 = mp.n1, n2 = mp.n2;

  struct Tally {
    std::string name;
    long violations = 0;
    std::optional<std::string> witness;
    void fail(std::string w) {
      if (!violations++) witness = std::move(w);
    }
  };
  Tally def{"defining_relation"}, unit{"unit"}, a_hom{"alpha_composition"}, b_coc{"beta_cocycle"},
      b_hom{"beta_composition"}, a_coc{"alpha_cocycle"};

  for (int g = 0; g < n1; ++g)
    for (int h = 0; h < n2; ++h) {
      // j(alpha_g(h)) i(beta_h(g)) = i(g) j(h)
      if (G.mul(mp.j(mp.alpha(g, h)), mp.i(mp.beta(h, g))) != G.mul(mp.i(g), mp.j(h)))
        def.fail(fmt::format("(g,h) = ({}, {})", mp.name1(g), mp.name2(h)));
    }
  for (int g = 0; g < n1; ++g)
    if (mp.alpha(g, B.identity()) != B.identity()) unit.fail(fmt::format("alpha_{}(1) != 1", mp.name1(g)));
  for (int h = 0; h < n2; ++h)
    if (mp.beta(h, A.identity()) != A.identity()) unit.fail(fmt::format("beta_{}(1) != 1", mp.name2(h)));

  for (int g = 0; g < n1; ++g)
    for (int s = 0; s < n1; ++s)
      for (int h = 0; h < n2; ++h) {
        const int gs = A.mul(g, s);
        if (mp.alpha(gs, h) != mp.alpha(g, mp.alpha(s, h)))
          a_hom.fail(fmt::format("alpha_{{gs}}(h) != alpha_g(alpha_s(h)) at (g,s,h) = ({}, {}, {})", mp.name1(g),
                                 mp.name1(s), mp.name2(h)));
        if (mp.beta(h, gs) != A.mul(mp.beta(mp.alpha(s, h), g), mp.beta(h, s)))
          b_coc.fail(fmt::format("beta_h(gs) != beta_{{alpha_s(h)}}(g) beta_h(s) at (g,s,h) = ({}, {}, {})", mp.name1(g),
                                 mp.name1(s), mp.name2(h)));
      }
  for (int g = 0; g < n1; ++g)
    for (int h = 0; h < n2; ++h)
      for (int t = 0; t < n2; ++t) {
        const int ht = B.mul(h, t);
        if (mp.beta(ht, g) != mp.beta(h, mp.beta(t, g)))
          b_hom.fail(fmt::format("beta_{{ht}}(g) != beta_h(beta_t(g)) at (g,h,t) = ({}, {}, {})", mp.name1(g),
                                 mp.name2(h), mp.name2(t)));
        if (mp.alpha(g, ht) != B.mul(mp.alpha(mp.beta(t, g), h), mp.alpha(g, t)))
          a_coc.fail(fmt::format("alpha_g(ht) != alpha_{{beta_t(g)}}(h) alpha_g(t) at (g,h,t) = ({}, {}, {})",
                                 mp.name1(g), mp.name2(h), mp.name2(t)));
      }

  VerificationReport rep;
  for (Tally* t : {&def, &unit, &a_hom, &b_coc, &b_hom, &a_coc})
    rep.add(PropertyVerdict{t->name, t->violations == 0, static_cast<double>(t->violations), t->witness, std::nullopt});
  return rep;
}

TrivialityWitness alpha_triviality(const FiniteMatchedPair& mp) {
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h)
      if (mp.alpha(g, h) != h)
        return {false, fmt::format("alpha_{}({}) = {}", mp.name1(g), mp.name2(h), mp.name2(mp.alpha(g, h)))};
  return {true, fmt::format("alpha trivial on all {} pairs", mp.n1 * mp.n2)};
}

TrivialityWitness beta_triviality(const FiniteMatchedPair& mp) {
  for (int g = 0; g < mp.n1; ++g)
    for (int h = 0; h < mp.n2; ++h)
      if (mp.beta(h, g) != g)
        return {false, fmt::format("beta_{}({}) = {}", mp.name2(h), mp.name1(g), mp.name1(mp.beta(h, g)))};
  return {true, fmt::format("beta trivial on all {} pairs", mp.n1 * mp.n2)};
}

std::vector<int> beta_kernel(const FiniteMatchedPair& mp) {
  std::vector<int> out;
  for (int h = 0; h < mp.n2; ++h) {
    bool fixes = true;
    for (int g = 0; g < mp.n1 && fixes; ++g) fixes = mp.beta(h, g) == g;
    if (fixes) out.push_back(h);
  }
  return out;
}

}  // namespace bqg
