#include "bqg/bicrossed.hpp"

#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "bqg/analytic.hpp"

namespace bqg {

std::string MultiplicativeUnitary::point_name(int x) const {
  return fmt::format("({}, {})", pair->name1(x / pair->n2), pair->name2(x % pair->n2));
}

MultiplicativeUnitary build_W(std::shared_ptr<const FiniteMatchedPair> mp) {
  const FiniteMatchedPair& p = *mp;
  const int n1 = p.n1, n2 = p.n2, N = n1 * n2;
  std::vector<int> map(static_cast<std::size_t>(N) * N);
  for (int g = 0; g < n1; ++g)
    for (int s = 0; s < n2; ++s) {
      const int ainv = p.g2.inv(p.alpha(g, s));
      for (int h = 0; h < n1; ++h)
        for (int t = 0; t < n2; ++t) {
          // T(g,s,h,t) = (beta_u(h) g, s, h, u) with u = alpha_g(s)^{-1} t
          const int u = p.g2.mul(ainv, t);
          const int g2 = p.g1.mul(p.beta(u, h), g);
          map[(g * n2 + s) * N + (h * n2 + t)] = (g2 * n2 + s) * N + (h * n2 + u);
        }
    }
  MultiplicativeUnitary W{std::move(mp), N, Permutation(std::move(map))};
  if (!W.perm.is_bijection()) throw std::logic_error("build_W: point map is not a bijection");
  return W;
}

PropertyVerdict check_pentagon(const Permutation& W, int N) {
  const long NN = static_cast<long>(N) * N;
  if (W.size() != NN) throw std::invalid_argument("check_pentagon: size mismatch");
  auto T = [&](int a, int b) {
    const int q = W(a * N + b);
    return std::pair{q / N, q % N};
  };
  long mismatches = 0;
  std::optional<std::string> witness;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        // W23 W12: apply T on legs 2,3 then on legs 1,2
        auto [ly, lz] = T(y, z);
        auto [lx, ly2] = T(x, ly);
        // W12 W13 W23: legs 1,2 then 1,3 then 2,3
        auto [rx, ry] = T(x, y);
        auto [rx2, rz] = T(rx, z);
        auto [ry2, rz2] = T(ry, rz);
        if (lx != rx2 || ly2 != ry2 || lz != rz2) {
          if (!mismatches++)
            witness = fmt::format("point ({}, {}, {}): W23W12 -> ({}, {}, {}), W12W13W23 -> ({}, {}, {})", x, y, z, lx,
                                  ly2, lz, rx2, ry2, rz2);
        }
      }
  return PropertyVerdict{"pentagon", mismatches == 0, static_cast<double>(mismatches), witness,
                         fmt::format("{} points compared exactly", static_cast<long>(N) * N * N)};
}

PropertyVerdict check_pentagon(const MultiplicativeUnitary& W) { return check_pentagon(W.perm, W.N); }

Permutation dual_unitary(const Permutation& W, int N) {
  const Permutation sigma = flip_permutation(TensorShape{N, N});
  // sigma W* sigma as operators; point maps compose in reverse
  return sigma * W.inverse() * sigma;
}

SparseMatrix comult(const Permutation& W, const SparseMatrix& x) {
  const int N = static_cast<int>(x.rows());
  if (x.cols() != N || static_cast<long>(N) * N != W.size()) throw std::invalid_argument("comult: size mismatch");
  return conjugate(W, kron(sparse_identity(N), x));
}

SparseMatrix comult_right_leg(const Permutation& W, int N, const SparseMatrix& X) {
  const TensorShape shape{N, N, N};
  return conjugate(embed_leg(W, shape, {2, 3}), embed_leg(X, shape, {1, 3}));
}

SparseMatrix comult_left_leg(const Permutation& W, int N, const SparseMatrix& X) {
  const TensorShape shape{N, N, N};
  return conjugate(embed_leg(W, shape, {1, 2}), embed_leg(X, shape, {2, 3}));
}

namespace {

std::vector<SparseMatrix> collect_slices(const Permutation& W, int N, bool second) {
  std::vector<std::vector<Eigen::Triplet<cplx>>> trip(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < W.size(); ++a) {
    const int b = W(a);
    const int x = a / N, k = a % N, y = b / N, l = b % N;
    // W[(x,k),(y,l)] = 1
    if (second)
      trip[k * N + l].emplace_back(x, y, 1.0);
    else
      trip[x * N + y].emplace_back(k, l, 1.0);
  }
  std::vector<SparseMatrix> out;
  for (const auto& t : trip) {
    if (t.empty()) continue;
    SparseMatrix m(N, N);
    m.setFromTriplets(t.begin(), t.end());
    out.push_back(std::move(m));
  }
  return out;
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) { return max_abs(SparseMatrix(a - b)); }

}  // namespace

std::vector<SparseMatrix> slices_second_leg(const Permutation& W, int N) { return collect_slices(W, N, true); }
std::vector<SparseMatrix> slices_first_leg(const Permutation& W, int N) { return collect_slices(W, N, false); }

BicrossedAlgebra slice_algebras(const MultiplicativeUnitary& W, double tol) {
  const FiniteMatchedPair& p = *W.pair;
  const int n1 = p.n1, n2 = p.n2, N = W.N;
  BicrossedAlgebra alg{W, span_basis(slices_second_leg(W.perm, N), tol), span_basis(slices_first_leg(W.perm, N), tol),
                       {}, {}, {}};
  for (int s = 0; s < n2; ++s) {
    SparseMatrix m(N, N);
    for (int g = 0; g < n1; ++g)
      for (int t = 0; t < n2; ++t)
        if (p.alpha(g, t) == s) m.insert(g * n2 + t, g * n2 + t) = 1.0;
    m.makeCompressed();
    alg.alpha_rep.push_back(std::move(m));
  }
  for (int z = 0; z < n1; ++z) {
    SparseMatrix m(N, N);
    for (int g = 0; g < n1; ++g)
      for (int t = 0; t < n2; ++t) m.insert(g * n2 + t, p.g1.mul(z, g) * n2 + t) = 1.0;
    m.makeCompressed();
    alg.lambda_rep.push_back(std::move(m));
  }
  for (int s = 0; s < n2; ++s)
    for (int z = 0; z < n1; ++z) alg.presentation.push_back(SparseMatrix(alg.alpha_rep[s] * alg.lambda_rep[z]));
  return alg;
}

PropertyVerdict check_star_algebra(const OperatorSpace& s, const std::string& name, double tol) {
  const int n = s.ambient_dim();
  double res = s.residual(sparse_identity(n));
  std::optional<std::string> witness;
  if (res > tol) witness = "identity not in " + name;
  const auto gens = s.independent_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double r = s.residual(SparseMatrix(gens[i].adjoint()));
    if (r > tol && !witness) witness = fmt::format("adjoint of generator {} not in {}", i, name);
    res = std::max(res, r);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const double q = s.residual(SparseMatrix(gens[i] * gens[j]));
      if (q > tol && !witness) witness = fmt::format("product of generators {} and {} not in {}", i, j, name);
      res = std::max(res, q);
    }
  }
  return PropertyVerdict{name + "_star_algebra", res <= tol, res, witness,
                         fmt::format("rank({}) = {}, {} generators closed under * and products", name, s.rank(), gens.size())};
}

PropertyVerdict check_presentation(const BicrossedAlgebra& alg, double tol) {
  const int N = alg.W.N;
  const OperatorSpace pres = span_basis(alg.presentation, tol);
  const SpanComparison cmp = span_equal(alg.A, pres, tol);
  const bool ranks = alg.A.rank() == N && pres.rank() == N;
  std::optional<std::string> witness;
  if (!ranks) witness = fmt::format("rank(A) = {}, rank(presentation) = {}, expected {}", alg.A.rank(), pres.rank(), N);
  else if (!cmp.equal) witness = "slice span differs from alpha(C(G2))(lambda(G1) (x) 1)";
  return PropertyVerdict{"presentation", ranks && cmp.equal, cmp.residual, witness,
                         fmt::format("rank(A) = {} = |G1||G2|; span_equal residual {}", alg.A.rank(), sci(cmp.residual))};
}

VerificationReport check_cancellation(const OperatorSpace& A, const Permutation& W, double tol) {
  const auto gens = A.independent_generators();
  const int N = A.ambient_dim();
  const long d = static_cast<long>(gens.size());
  std::vector<SparseMatrix> delta;
  for (const auto& a : gens) delta.push_back(comult(W, a));
  const SparseMatrix I = sparse_identity(N);

  std::vector<SparseMatrix> tensor, left, right;
  for (const auto& a : gens)
    for (const auto& b : gens) tensor.push_back(kron(a, b));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (const auto& b : gens) {
      left.push_back(SparseMatrix(delta[i] * kron(I, b)));
      right.push_back(SparseMatrix(delta[i] * kron(b, I)));
    }
  const OperatorSpace AA = span_basis(std::move(tensor), tol);

  VerificationReport rep;
  for (auto* side : {&left, &right}) {
    const bool is_left = side == &left;
    const OperatorSpace S = span_basis(std::move(*side), tol);
    const SpanComparison cmp = span_equal(S, AA, tol);
    const bool ok = S.rank() == d * d && AA.rank() == d * d && cmp.equal;
    std::optional<std::string> witness;
    if (!ok) witness = fmt::format("rank {} vs dim(A)^2 = {}, residual {}", S.rank(), d * d, sci(cmp.residual));
    rep.add(PropertyVerdict{is_left ? "cancellation_left" : "cancellation_right", ok, cmp.residual, witness,
                            fmt::format("rank span{{Delta(a)({})}} = {} = {}^2", is_left ? "1 (x) b" : "b (x) 1", S.rank(), d)});
  }
  return rep;
}

PropertyVerdict check_comult(const BicrossedAlgebra& alg, double tol) {
  const Permutation& W = alg.W.perm;
  const int N = alg.W.N;
  const auto& P = alg.presentation;
  std::vector<SparseMatrix> D;
  for (const auto& x : P) D.push_back(comult(W, x));

  double unit = max_abs_diff(comult(W, sparse_identity(N)), sparse_identity(N * N));
  double mult = 0.0, star = 0.0, coassoc = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    star = std::max(star, max_abs_diff(comult(W, SparseMatrix(P[i].adjoint())), SparseMatrix(D[i].adjoint())));
    for (std::size_t j = 0; j < P.size(); ++j)
      mult = std::max(mult, max_abs_diff(comult(W, SparseMatrix(P[i] * P[j])), SparseMatrix(D[i] * D[j])));
    coassoc = std::max(coassoc, max_abs_diff(comult_right_leg(W, N, D[i]), comult_left_leg(W, N, D[i])));
  }
  const double res = std::max({unit, mult, star, coassoc});
  std::optional<std::string> witness;
  if (res > tol)
    witness = fmt::format("unit {}, multiplicativity {}, adjoint {}, coassociativity {}", sci(unit), sci(mult), sci(star),
                          sci(coassoc));
  return PropertyVerdict{"comultiplication", res <= tol, res, witness,
                         fmt::format("{} spanning elements, {} products", P.size(), P.size() * P.size())};
}

// ---------------------------------------------------------------------------

cplx HaarWeight::operator()(const SparseMatrix& x) const { return dual.conjugate().cwiseProduct(x).sum(); }

SparseMatrix HaarWeight::slice_second(const SparseMatrix& X) const {
  const ComplexMatrix V(dual);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int r = 0; r < X.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(X, r); it; ++it) {
      const cplx v = std::conj(V(it.row() % n, it.col() % n));
      if (v != cplx(0.0)) trip.emplace_back(it.row() / n, it.col() / n, v * it.value());
    }
  SparseMatrix out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMatrix HaarWeight::slice_first(const SparseMatrix& X) const {
  const ComplexMatrix V(dual);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (int r = 0; r < X.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(X, r); it; ++it) {
      const cplx v = std::conj(V(it.row() / n, it.col() / n));
      if (v != cplx(0.0)) trip.emplace_back(it.row() % n, it.col() % n, v * it.value());
    }
  SparseMatrix out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

HaarWeight haar_weight(const BicrossedAlgebra& alg) {
  const auto& P = alg.presentation;
  const int n1 = alg.W.pair->n1;
  const int m = static_cast<int>(P.size());
  Eigen::MatrixXcd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = P[i].conjugate().cwiseProduct(P[j]).sum();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
  const double smin = svd.singularValues().minCoeff();
  if (smin <= 1e-9 * svd.singularValues().maxCoeff())
    throw std::runtime_error("haar_weight: the spanning family alpha(delta_s)(lambda_z (x) 1) is linearly dependent");

  // phi(P_i) = [z = e]; phi(x) = <V, x> with V = sum_j c_j P_j
  Eigen::VectorXcd target(m);
  for (int i = 0; i < m; ++i) target(i) = (i % n1) == alg.W.pair->g1.identity() ? 1.0 : 0.0;
  const Eigen::VectorXcd cbar = G.transpose().fullPivLu().solve(target);
  SparseMatrix V(alg.W.N, alg.W.N);
  for (int j = 0; j < m; ++j) V += std::conj(cbar(j)) * P[j];
  V.makeCompressed();
  return HaarWeight{alg.W.N, V, smin};
}

VerificationReport check_haar(const BicrossedAlgebra& alg, const HaarWeight& phi, std::uint64_t seed, double tol) {
  const int N = alg.W.N;
  const SparseMatrix I = sparse_identity(N);
  double left = 0.0, right = 0.0;
  for (const auto& a : alg.presentation) {
    const SparseMatrix D = comult(alg.W.perm, a);
    const cplx pa = phi(a);
    left = std::max(left, max_abs_diff(phi.slice_second(D), SparseMatrix(pa * I)));
    right = std::max(right, max_abs_diff(phi.slice_first(D), SparseMatrix(pa * I)));
  }

  double worst = 0.0;
  auto rng = sample_rng(seed, 0);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 1000; ++trial) {
    SparseMatrix a(N, N);
    for (const auto& p : alg.presentation) a += cplx(nd(rng), nd(rng)) * p;
    const cplx v = phi(SparseMatrix(a.adjoint() * a));
    worst = std::min(worst, v.real());
  }

  VerificationReport rep;
  rep.add({"haar_left_invariance", left <= tol, left, left <= tol ? std::nullopt : std::optional<std::string>("(id (x) phi)Delta(a) != phi(a)1"),
           fmt::format("max over {} spanning elements", alg.presentation.size())});
  rep.add({"haar_right_invariance", right <= tol, right, right <= tol ? std::nullopt : std::optional<std::string>("(phi (x) id)Delta(a) != phi(a)1"),
           fmt::format("max over {} spanning elements", alg.presentation.size())});
  rep.add({"haar_positivity", worst >= -1e-10, -worst, worst >= -1e-10 ? std::nullopt : std::optional<std::string>("phi(a*a) < 0"),
           "min phi(a*a) over 1000 random a"});
  return rep;
}

VerificationReport dual_checks(const BicrossedAlgebra& alg, double tol) {
  const int N = alg.W.N;
  const Permutation Wd = dual_unitary(alg.W.perm, N);
  VerificationReport rep;
  PropertyVerdict pent = check_pentagon(Wd, N);
  pent.property = "dual_pentagon";
  rep.add(pent);
  rep.add(check_star_algebra(alg.Ahat, "Ahat", tol));

  double coassoc = 0.0;
  const auto gens = alg.Ahat.independent_generators();
  for (const auto& a : gens) {
    // Delta^(a) = sigma(W(a (x) 1)W*), which is the comultiplication of W^
    const SparseMatrix D = comult(Wd, a);
    coassoc = std::max(coassoc, max_abs_diff(comult_right_leg(Wd, N, D), comult_left_leg(Wd, N, D)));
  }
  rep.add(PropertyVerdict{"dual_coassociativity", coassoc <= tol, coassoc,
                          coassoc <= tol ? std::nullopt : std::optional<std::string>("dual comultiplication not coassociative"),
                          fmt::format("rank(Ahat) = {}; {} generators", alg.Ahat.rank(), gens.size())});
  return rep;
}

Commutativity commutativity(const OperatorSpace& s, double tol) {
  const auto g = s.independent_generators();
  Commutativity c;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      c.max_commutator = std::max(c.max_commutator, max_abs(SparseMatrix(g[i] * g[j] - g[j] * g[i])));
  c.commutative = c.max_commutator <= tol;
  return c;
}

}  // namespace bqg
