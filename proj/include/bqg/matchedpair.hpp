#pragma once

#include <string>
#include <vector>

#include "bqg/groups.hpp"
#include "bqg/report.hpp"

namespace bqg {

// Mutual actions of an exact factorization, on local indices: G1 elements are
// 0..n1-1 in the order of fact.G1.members, likewise G2.
struct FiniteMatchedPair {
  ExactFactorization fact;
  FiniteGroup g1, g2;  // the subgroups as groups in their own right
  int n1 = 0, n2 = 0;
  std::vector<int> alpha_table;  // [g*n2 + h] -> alpha_g(h)
  std::vector<int> beta_table;   // [g*n2 + h] -> beta_h(g)

  int alpha(int g, int h) const { return alpha_table[g * n2 + h]; }  // alpha_g(h)
  int beta(int h, int g) const { return beta_table[g * n2 + h]; }    // beta_h(g)

  // i(g) and j(h) = h^-1 in the ambient group
  int i(int g) const { return fact.G1.members[g]; }
  int j(int h) const { return fact.G->inv(fact.G2.members[h]); }

  std::string name1(int g) const { return g1.element_name(g); }
  std::string name2(int h) const { return g2.element_name(h); }
};

FiniteMatchedPair derive_actions(const ExactFactorization& fact);
VerificationReport verify_compatibility(const FiniteMatchedPair& mp);

struct TrivialityWitness {
  bool trivial = true;
  std::string witness;  // moving tuple, or a note when trivial
};
TrivialityWitness alpha_triviality(const FiniteMatchedPair& mp);
TrivialityWitness beta_triviality(const FiniteMatchedPair& mp);

// Elements of G2 acting trivially through beta.
std::vector<int> beta_kernel(const FiniteMatchedPair& mp);

}  // namespace bqg
