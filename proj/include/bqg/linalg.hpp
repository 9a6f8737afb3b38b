#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace bqg {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct CharacterGroup;

// Leg dimensions of a tensor product space, leg 1 first.
struct TensorShape {
  std::vector<int> dims;

  TensorShape() = default;
  TensorShape(std::initializer_list<int> d) : dims(d) {}
  explicit TensorShape(std::vector<int> d) : dims(std::move(d)) {}

  int legs() const { return static_cast<int>(dims.size()); }
  long total() const;
};

// Permutation operator stored as an index map: (P xi)(x) = xi(map[x]),
// so the matrix has P[x, map[x]] = 1.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> map);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int x) const { return map_[x]; }
  const std::vector<int>& map() const { return map_; }

  bool is_bijection() const;
  bool is_identity() const;
  Permutation inverse() const;  // also the adjoint

  SparseMatrix to_sparse() const;
  ComplexMatrix to_dense() const;

  bool operator==(const Permutation& o) const { return map_ == o.map_; }

 private:
  std::vector<int> map_;
};

// Operator product a*b; as point maps this is b after a.
Permutation operator*(const Permutation& a, const Permutation& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
Permutation kron(const Permutation& a, const Permutation& b);

Permutation flip_permutation(const TensorShape& shape);
ComplexMatrix flip_operator(const TensorShape& shape);

// Places t on the selected legs (1-based, increasing) of shape, identity elsewhere.
ComplexMatrix embed_leg(const ComplexMatrix& t, const TensorShape& shape, const std::vector<int>& legs);
SparseMatrix embed_leg(const SparseMatrix& t, const TensorShape& shape, const std::vector<int>& legs);
Permutation embed_leg(const Permutation& t, const TensorShape& shape, const std::vector<int>& legs);

// P* m P for a permutation operator P.
SparseMatrix conjugate(const Permutation& p, const SparseMatrix& m);

SparseMatrix sparse_identity(int n);
SparseMatrix to_sparse(const ComplexMatrix& m, double drop = 0.0);
SparseMatrix prune(const SparseMatrix& m, double drop);
double max_abs(const SparseMatrix& m);
double max_abs(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& u);

// Block (i,j) of a matrix on C^outer (x) C^inner.
SparseMatrix leg_block(const SparseMatrix& m, int inner, int i, int j);

class OperatorSpace {
 public:
  OperatorSpace() = default;

  int ambient_dim() const { return n_; }
  long vector_dim() const { return static_cast<long>(n_) * n_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  double tol() const { return tol_; }

  const std::vector<SparseMatrix>& generators() const { return gens_; }
  // Columns are orthonormal, indexed by row-major vectorization.
  const Eigen::SparseMatrix<cplx>& basis() const { return basis_; }
  SparseMatrix basis_matrix(int k) const;

  // A linearly independent subset of the generators spanning the same space.
  const std::vector<int>& independent() const { return independent_; }
  std::vector<SparseMatrix> independent_generators() const;

  // Distance from m to the span, relative to the norm of m.
  double residual(const SparseMatrix& m) const;
  bool contains(const SparseMatrix& m) const { return residual(m) <= tol_; }

  std::size_t components() const { return components_; }

  friend OperatorSpace span_basis(std::vector<SparseMatrix> gens, double tol);

 private:
  int n_ = 0;
  double tol_ = 0.0;
  std::vector<SparseMatrix> gens_;
  Eigen::SparseMatrix<cplx> basis_;
  std::vector<int> independent_;
  std::size_t components_ = 0;
};

OperatorSpace span_basis(std::vector<SparseMatrix> gens, double tol = 1e-9);
OperatorSpace span_basis(const std::vector<ComplexMatrix>& gens, double tol = 1e-9);

struct SpanComparison {
  bool equal = false;
  double residual = 0.0;
};
SpanComparison span_equal(const OperatorSpace& s1, const OperatorSpace& s2, double tol = 1e-9);

// F[g^, h] = |H|^{-1/2} <h, g^>.
ComplexMatrix dft_unitary(const CharacterGroup& chars);

}  // namespace bqg
