#pragma once

#include <memory>
#include <vector>

#include "bqg/linalg.hpp"
#include "bqg/matchedpair.hpp"
#include "bqg/report.hpp"

namespace bqg {

// W on l2(G1 x G2) (x) l2(G1 x G2) as the point map T of (W xi)(x) = xi(T x).
// The point (g,s) has index g*n2 + s; a pair (x,y) has index x*N + y.
struct MultiplicativeUnitary {
  std::shared_ptr<const FiniteMatchedPair> pair;
  int N = 0;
  Permutation perm;

  int index(int g, int s) const { return g * pair->n2 + s; }
  SparseMatrix matrix() const { return perm.to_sparse(); }
  std::string point_name(int x) const;
};

MultiplicativeUnitary build_W(std::shared_ptr<const FiniteMatchedPair> mp);

// Exact pentagon check W23 W12 = W12 W13 W23 on index maps over N^3 points.
PropertyVerdict check_pentagon(const Permutation& W, int N);
PropertyVerdict check_pentagon(const MultiplicativeUnitary& W);

// sigma (W*) sigma as a point map.
Permutation dual_unitary(const Permutation& W, int N);

// Delta(x) = W*(1 (x) x) W for the unitary W (a permutation on N^2 points).
SparseMatrix comult(const Permutation& W, const SparseMatrix& x);
inline SparseMatrix comult(const MultiplicativeUnitary& W, const SparseMatrix& x) { return comult(W.perm, x); }

// (id (x) Delta)(X) and (Delta (x) id)(X) for X on the doubled space.
SparseMatrix comult_right_leg(const Permutation& W, int N, const SparseMatrix& X);
SparseMatrix comult_left_leg(const Permutation& W, int N, const SparseMatrix& X);

// Matrix-unit slices: second leg gives A = {(id (x) w)W}, first leg gives Ahat = {(w (x) id)W}.
std::vector<SparseMatrix> slices_second_leg(const Permutation& W, int N);
std::vector<SparseMatrix> slices_first_leg(const Permutation& W, int N);

struct BicrossedAlgebra {
  MultiplicativeUnitary W;
  OperatorSpace A, Ahat;
  std::vector<SparseMatrix> alpha_rep;   // s -> alpha(delta_s), multiplication by [alpha_g(t) = s]
  std::vector<SparseMatrix> lambda_rep;  // z -> (xi)(g,t) -> xi(z g, t)
  // alpha(delta_s)(lambda_z (x) 1) at index s*n1 + z
  std::vector<SparseMatrix> presentation;
};

BicrossedAlgebra slice_algebras(const MultiplicativeUnitary& W, double tol = 1e-9);

// Slice space vs presentation: rank and span equality.
PropertyVerdict check_presentation(const BicrossedAlgebra& alg, double tol = 1e-9);
// Unital, closed under adjoint and under products of generators.
PropertyVerdict check_star_algebra(const OperatorSpace& s, const std::string& name, double tol = 1e-9);

// span{Delta(a)(1 (x) b)} and span{Delta(a)(b (x) 1)} against A (x) A.
VerificationReport check_cancellation(const OperatorSpace& A, const Permutation& W, double tol = 1e-9);

// Delta multiplicative and coassociative on the spanning family of A.
PropertyVerdict check_comult(const BicrossedAlgebra& alg, double tol = 1e-10);

struct HaarWeight {
  int n = 0;
  SparseMatrix dual;  // phi(x) = <dual, x>_Frobenius
  double min_gram_singular = 0.0;  // independence margin of the spanning family

  cplx operator()(const SparseMatrix& x) const;
  // (id (x) phi) and (phi (x) id) on the doubled space
  SparseMatrix slice_second(const SparseMatrix& X) const;
  SparseMatrix slice_first(const SparseMatrix& X) const;
};

HaarWeight haar_weight(const BicrossedAlgebra& alg);
// Left and right invariance on the spanning family, plus positivity on random elements.
VerificationReport check_haar(const BicrossedAlgebra& alg, const HaarWeight& phi, std::uint64_t seed = 0,
                              double tol = 1e-9);

VerificationReport dual_checks(const BicrossedAlgebra& alg, double tol = 1e-9);

struct Commutativity {
  bool commutative = true;
  double max_commutator = 0.0;
};
Commutativity commutativity(const OperatorSpace& s, double tol = 1e-10);

}  // namespace bqg
