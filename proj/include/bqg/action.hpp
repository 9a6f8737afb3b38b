#pragma once

#include <memory>
#include <vector>

#include "bqg/analytic.hpp"
#include "bqg/bicrossed.hpp"

namespace bqg {

// gamma on l2(G1) (x) l2(G1 x G2); the point (g,h,t) has index g*N + h*n2 + t.
struct ActionGamma {
  std::shared_ptr<const FiniteMatchedPair> pair;
  int n1 = 0, N = 0;
  std::vector<Permutation> gamma_perm;  // z -> gamma(lambda_z)
  CharacterGroup chars;
  ComplexMatrix F;  // DFT on l2(G1)
  // [z][k] -> T_z(g^_k) on l2(G1 x G2)
  std::vector<std::vector<SparseMatrix>> gamma_dft;
  std::vector<SparseMatrix> lambda;  // z -> lambda_z on l2(G1): xi(g) -> xi(g z)

  SparseMatrix gamma(int z) const { return gamma_perm[z].to_sparse(); }
};

// Throws std::invalid_argument when G1 is not abelian.
ActionGamma build_gamma(std::shared_ptr<const FiniteMatchedPair> mp, const MultiplicativeUnitary& W);

// gamma from the closed formula vs Delta(lambda_z (x) 1) compressed at a fixed s;
// also multiplicativity and the DFT block structure.
PropertyVerdict check_gamma_constructions(const ActionGamma& ag, const MultiplicativeUnitary& W,
                                          const BicrossedAlgebra& alg, double tol = 1e-10);

PropertyVerdict check_comodule(const ActionGamma& ag, const MultiplicativeUnitary& W, double tol = 1e-10);
PropertyVerdict check_podles(const ActionGamma& ag, const OperatorSpace& A, double tol = 1e-9);
PropertyVerdict check_ergodic(const ActionGamma& ag, double tol = 1e-9);

struct FaithfulResult {
  PropertyVerdict verdict;
  int generated_rank = 0;
  int rounds = 0;
};
FaithfulResult check_faithful(const ActionGamma& ag, const OperatorSpace& A, double tol = 1e-9);

PropertyVerdict check_isometry_criterion(const FiniteMatchedPair& mp);
PropertyVerdict check_isometry_criterion(const AnalyticMatchedPair& p, const SampledConfig& cfg);

struct ClassifyInput {
  const PropertyVerdict* faithful = nullptr;
  const PropertyVerdict* isometric = nullptr;
  Commutativity A, Ahat;
};
PropertyVerdict classify(const ClassifyInput& in);

}  // namespace bqg
