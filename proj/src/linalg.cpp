#include "bqg/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <unsupported/Eigen/KroneckerProduct>

#include "bqg/groups.hpp"

namespace bqg {

long TensorShape::total() const {
  long t = 1;
  for (int d : dims) t *= d;
  return t;
}

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

bool Permutation::is_bijection() const {
  std::vector<char> hit(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || v >= size() || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

SparseMatrix Permutation::to_sparse() const {
  SparseMatrix m(size(), size());
  m.reserve(Eigen::VectorXi::Constant(size(), 1));
  for (int i = 0; i < size(); ++i) m.insert(i, map_[i]) = 1.0;
  m.makeCompressed();
  return m;
}

ComplexMatrix Permutation::to_dense() const {
  ComplexMatrix m = ComplexMatrix::Zero(size(), size());
  for (int i = 0; i < size(); ++i) m(i, map_[i]) = 1.0;
  return m;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> m(a.size());
  for (int x = 0; x < a.size(); ++x) m[x] = b(a(x));
  return Permutation(std::move(m));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

Permutation kron(const Permutation& a, const Permutation& b) {
  const int nb = b.size();
  std::vector<int> m(static_cast<std::size_t>(a.size()) * nb);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < nb; ++j) m[i * nb + j] = a(i) * nb + b(j);
  return Permutation(std::move(m));
}

Permutation flip_permutation(const TensorShape& shape) {
  if (shape.legs() != 2) throw std::invalid_argument("flip_operator: expected exactly two legs");
  const int d1 = shape.dims[0], d2 = shape.dims[1];
  std::vector<int> m(static_cast<std::size_t>(d1) * d2);
  for (int x = 0; x < d1; ++x)
    for (int y = 0; y < d2; ++y) m[y * d1 + x] = x * d2 + y;
  return Permutation(std::move(m));
}

ComplexMatrix flip_operator(const TensorShape& shape) { return flip_permutation(shape).to_dense(); }

namespace {

// Offsets of the selected and unselected sub-indices inside the full mixed-radix index.
struct LegSplit {
  std::vector<long> sel, rest;
};

LegSplit split_legs(const TensorShape& shape, const std::vector<int>& legs, long tdim) {
  if (legs.empty()) throw std::invalid_argument("embed_leg: no legs selected");
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (legs[i] < 1 || legs[i] > shape.legs()) throw std::invalid_argument("embed_leg: leg out of range");
    if (i > 0 && legs[i] <= legs[i - 1]) throw std::invalid_argument("embed_leg: legs must be increasing");
  }
  const int k = shape.legs();
  std::vector<long> stride(k);
  long s = 1;
  for (int i = k - 1; i >= 0; --i) {
    stride[i] = s;
    s *= shape.dims[i];
  }
  std::vector<char> chosen(k, 0);
  for (int l : legs) chosen[l - 1] = 1;

  auto offsets = [&](bool pick) {
    std::vector<long> out{0};
    for (int i = 0; i < k; ++i) {
      if (static_cast<bool>(chosen[i]) != pick) continue;
      std::vector<long> next;
      next.reserve(out.size() * shape.dims[i]);
      for (long o : out)
        for (int d = 0; d < shape.dims[i]; ++d) next.push_back(o + d * stride[i]);
      out = std::move(next);
    }
    return out;
  };
  LegSplit ls{offsets(true), offsets(false)};
  if (static_cast<long>(ls.sel.size()) != tdim)
    throw std::invalid_argument("embed_leg: operator dimension does not match selected legs");
  return ls;
}

}  // namespace

SparseMatrix embed_leg(const SparseMatrix& t, const TensorShape& shape, const std::vector<int>& legs) {
  if (t.rows() != t.cols()) throw std::invalid_argument("embed_leg: operator must be square");
  const LegSplit ls = split_legs(shape, legs, t.rows());
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(t.nonZeros()) * ls.rest.size());
  for (long u : ls.rest)
    for (int i = 0; i < t.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(t, i); it; ++it)
        trip.emplace_back(ls.sel[it.row()] + u, ls.sel[it.col()] + u, it.value());
  SparseMatrix out(shape.total(), shape.total());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

ComplexMatrix embed_leg(const ComplexMatrix& t, const TensorShape& shape, const std::vector<int>& legs) {
  return ComplexMatrix(embed_leg(to_sparse(t), shape, legs));
}

Permutation embed_leg(const Permutation& t, const TensorShape& shape, const std::vector<int>& legs) {
  const LegSplit ls = split_legs(shape, legs, t.size());
  std::vector<int> m(shape.total());
  for (long u : ls.rest)
    for (int i = 0; i < t.size(); ++i) m[ls.sel[i] + u] = static_cast<int>(ls.sel[t(i)] + u);
  return Permutation(std::move(m));
}

SparseMatrix conjugate(const Permutation& p, const SparseMatrix& m) {
  if (p.size() != m.rows() || m.rows() != m.cols()) throw std::invalid_argument("conjugate: size mismatch");
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(m.nonZeros());
  for (int i = 0; i < m.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) trip.emplace_back(p(it.row()), p(it.col()), it.value());
  SparseMatrix out(m.rows(), m.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix sparse_identity(int n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return m;
}

SparseMatrix to_sparse(const ComplexMatrix& m, double drop) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > drop) trip.emplace_back(i, j, m(i, j));
  SparseMatrix out(m.rows(), m.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix prune(const SparseMatrix& m, double drop) {
  SparseMatrix out = m;
  out.prune([drop](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) > drop; });
  out.makeCompressed();
  return out;
}

double max_abs(const SparseMatrix& m) {
  double r = 0.0;
  for (int i = 0; i < m.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitarity_defect: not square");
  return max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())));
}

SparseMatrix leg_block(const SparseMatrix& m, int inner, int i, int j) {
  return SparseMatrix(m.block(static_cast<Eigen::Index>(i) * inner, static_cast<Eigen::Index>(j) * inner, inner, inner));
}

// ---------------------------------------------------------------------------

namespace {

using Entries = std::vector<std::pair<long, cplx>>;

Entries vectorize(const SparseMatrix& m) {
  Entries e;
  e.reserve(m.nonZeros());
  const long n = m.cols();
  for (int i = 0; i < m.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(m, i); it; ++it)
      if (it.value() != cplx(0.0)) e.emplace_back(static_cast<long>(it.row()) * n + it.col(), it.value());
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return e;
}

Eigen::SparseVector<cplx> as_vector(const SparseMatrix& m) {
  Eigen::SparseVector<cplx> v(m.rows() * m.cols());
  for (const auto& [k, x] : vectorize(m)) v.insert(k) = x;
  return v;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OperatorSpace span_basis(std::vector<SparseMatrix> gens, double tol) {
  if (gens.empty()) throw std::invalid_argument("span_basis: empty generator list");
  const int n = static_cast<int>(gens.front().rows());
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("span_basis: generators must be square and equal size");

  const int G = static_cast<int>(gens.size());
  std::vector<Entries> vecs(G);
  for (int g = 0; g < G; ++g) vecs[g] = vectorize(gens[g]);

  // Generators sharing a coordinate belong to the same block of the
  // (permuted) generator matrix; the SVD factorizes block by block.
  UnionFind uf(G);
  std::unordered_map<long, int> owner;
  for (int g = 0; g < G; ++g)
    for (const auto& [k, x] : vecs[g]) {
      auto [it, fresh] = owner.emplace(k, g);
      if (!fresh) uf.unite(g, it->second);
    }

  std::vector<std::vector<int>> comps;
  {
    std::unordered_map<int, int> slot;
    for (int g = 0; g < G; ++g) {
      if (vecs[g].empty()) continue;
      auto [it, fresh] = slot.emplace(uf.find(g), static_cast<int>(comps.size()));
      if (fresh) comps.emplace_back();
      comps[it->second].push_back(g);
    }
  }

  struct Block {
    std::vector<long> coords;
    Eigen::MatrixXcd M, U;
    Eigen::VectorXd sigma;
  };
  std::vector<Block> blocks(comps.size());
  double smax = 0.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Block& b = blocks[c];
    for (int g : comps[c])
      for (const auto& e : vecs[g]) b.coords.push_back(e.first);
    std::sort(b.coords.begin(), b.coords.end());
    b.coords.erase(std::unique(b.coords.begin(), b.coords.end()), b.coords.end());
    b.M = Eigen::MatrixXcd::Zero(b.coords.size(), comps[c].size());
    for (std::size_t j = 0; j < comps[c].size(); ++j)
      for (const auto& [k, x] : vecs[comps[c][j]]) {
        auto pos = std::lower_bound(b.coords.begin(), b.coords.end(), k) - b.coords.begin();
        b.M(pos, j) = x;
      }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(b.M, Eigen::ComputeThinU);
    b.U = svd.matrixU();
    b.sigma = svd.singularValues();
    if (b.sigma.size() > 0) smax = std::max(smax, b.sigma(0));
  }

  OperatorSpace s;
  s.n_ = n;
  s.tol_ = tol;
  s.components_ = comps.size();
  const double cut = tol * smax;

  std::vector<Eigen::Triplet<cplx>> trip;
  int col = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const Block& b = blocks[c];
    int r = 0;
    while (r < b.sigma.size() && b.sigma(r) > cut) ++r;
    for (int k = 0; k < r; ++k, ++col)
      for (std::size_t i = 0; i < b.coords.size(); ++i)
        if (b.U(i, k) != cplx(0.0)) trip.emplace_back(b.coords[i], col, b.U(i, k));

    // Greedy selection of independent generators inside the block.
    Eigen::MatrixXcd Q(b.M.rows(), 0);
    for (std::size_t j = 0; j < comps[c].size() && Q.cols() < r; ++j) {
      Eigen::VectorXcd v = b.M.col(j);
      for (int pass = 0; pass < 2 && Q.cols() > 0; ++pass) v -= Q * (Q.adjoint() * v);
      const double nv = v.norm();
      if (nv > cut) {
        Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
        Q.col(Q.cols() - 1) = v / nv;
        s.independent_.push_back(comps[c][j]);
      }
    }
  }
  std::sort(s.independent_.begin(), s.independent_.end());
  s.basis_.resize(static_cast<long>(n) * n, col);
  s.basis_.setFromTriplets(trip.begin(), trip.end());
  s.basis_.makeCompressed();
  s.gens_ = std::move(gens);
  return s;
}

OperatorSpace span_basis(const std::vector<ComplexMatrix>& gens, double tol) {
  std::vector<SparseMatrix> sp;
  sp.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.rows() != g.cols()) throw std::invalid_argument("span_basis: generators must be square and equal size");
    sp.push_back(to_sparse(g));
  }
  return span_basis(std::move(sp), tol);
}

SparseMatrix OperatorSpace::basis_matrix(int k) const {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::SparseMatrix<cplx>::InnerIterator it(basis_, k); it; ++it)
    trip.emplace_back(it.row() / n_, it.row() % n_, it.value());
  SparseMatrix m(n_, n_);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

std::vector<SparseMatrix> OperatorSpace::independent_generators() const {
  std::vector<SparseMatrix> out;
  out.reserve(independent_.size());
  for (int i : independent_) out.push_back(gens_[i]);
  return out;
}

double OperatorSpace::residual(const SparseMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw std::invalid_argument("OperatorSpace::residual: size mismatch");
  const Eigen::SparseVector<cplx> v = as_vector(m);
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  if (rank() == 0) return 1.0;
  const Eigen::SparseVector<cplx> c = basis_.adjoint() * v;
  const Eigen::SparseVector<cplx> p = basis_ * c;
  return Eigen::SparseVector<cplx>(v - p).norm() / nv;
}

SpanComparison span_equal(const OperatorSpace& s1, const OperatorSpace& s2, double tol) {
  if (s1.ambient_dim() != s2.ambient_dim()) throw std::invalid_argument("span_equal: ambient dimension mismatch");
  SpanComparison out;
  for (int k = 0; k < s1.rank(); ++k) out.residual = std::max(out.residual, s2.residual(s1.basis_matrix(k)));
  for (int k = 0; k < s2.rank(); ++k) out.residual = std::max(out.residual, s1.residual(s2.basis_matrix(k)));
  out.equal = out.residual <= tol;
  return out;
}

ComplexMatrix dft_unitary(const CharacterGroup& chars) {
  const int n = chars.base.order();
  if (!chars.base.is_abelian()) throw std::invalid_argument("dft_unitary: group is not abelian");
  if (chars.table.rows() != n || chars.table.cols() != n)
    throw std::invalid_argument("dft_unitary: incomplete character table");
  return chars.table / std::sqrt(static_cast<double>(n));
}

}  // namespace bqg
