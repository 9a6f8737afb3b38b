#include "bqg/action.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "bqg/parallel.hpp"

namespace bqg {

ActionGamma build_gamma(std::shared_ptr<const FiniteMatchedPair> mp, const MultiplicativeUnitary& W) {
  const FiniteMatchedPair& p = *mp;
  if (!p.g1.is_abelian()) throw std::invalid_argument("build_gamma: G1 must be abelian");
  if (W.pair.get() != mp.get()) throw std::invalid_argument("build_gamma: W belongs to a different matched pair");
  const int n1 = p.n1, n2 = p.n2, N = n1 * n2;

  ActionGamma ag;
  ag.pair = mp;
  ag.n1 = n1;
  ag.N = N;
  ag.chars = character_group(p.g1);
  ag.F = dft_unitary(ag.chars);

  for (int z = 0; z < n1; ++z) {
    // gamma(lambda_z) xi(g,h,t) = xi(g beta_{alpha_h(t)}(z), hz, t)
    std::vector<int> map(static_cast<std::size_t>(n1) * N);
    for (int g = 0; g < n1; ++g)
      for (int h = 0; h < n1; ++h)
        for (int t = 0; t < n2; ++t) {
          const int b = p.beta(p.alpha(h, t), z);
          map[g * N + h * n2 + t] = p.g1.mul(g, b) * N + p.g1.mul(h, z) * n2 + t;
        }
    ag.gamma_perm.emplace_back(std::move(map));

    std::vector<SparseMatrix> blocks;
    for (int k = 0; k < n1; ++k) {
      SparseMatrix T(N, N);
      for (int h = 0; h < n1; ++h)
        for (int t = 0; t < n2; ++t)
          T.insert(h * n2 + t, p.g1.mul(h, z) * n2 + t) = ag.chars.table(k, p.beta(p.alpha(h, t), z));
      T.makeCompressed();
      blocks.push_back(std::move(T));
    }
    ag.gamma_dft.push_back(std::move(blocks));

    SparseMatrix L(n1, n1);
    for (int g = 0; g < n1; ++g) L.insert(g, p.g1.mul(g, z)) = 1.0;
    L.makeCompressed();
    ag.lambda.push_back(std::move(L));
  }
  return ag;
}

namespace {

SparseMatrix fourier_conjugate(const ActionGamma& ag, const SparseMatrix& x) {
  const SparseMatrix Fk = kron(to_sparse(ag.F), sparse_identity(ag.N));
  return prune(SparseMatrix(Fk * x * SparseMatrix(Fk.adjoint())), 1e-13);
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) { return max_abs(SparseMatrix(a - b)); }

}  // namespace

PropertyVerdict check_gamma_constructions(const ActionGamma& ag, const MultiplicativeUnitary& W,
                                          const BicrossedAlgebra& alg, double tol) {
  const FiniteMatchedPair& p = *ag.pair;
  const int n1 = ag.n1, n2 = p.n2, N = ag.N;
  long mismatches = 0;
  std::optional<std::string> witness;
  auto fail = [&](std::string w) {
    if (!mismatches++) witness = std::move(w);
  };

  const Permutation Winv = W.perm.inverse();
  for (int z = 0; z < n1; ++z) {
    // Delta(lambda_z (x) 1) = W*(1 (x) lambda_z (x) 1)W as a point map
    std::vector<int> lz(N, 0);
    for (int x = 0; x < N; ++x)
      for (SparseMatrix::InnerIterator it(alg.lambda_rep[z], x); it; ++it) lz[x] = static_cast<int>(it.col());
    const Permutation D = Winv * kron(Permutation::identity(N), Permutation(std::move(lz))) * W.perm;
    for (int g = 0; g < n1; ++g)
      for (int s = 0; s < n2; ++s)
        for (int y = 0; y < N; ++y) {
          const int src = (g * n2 + s) * N + y;
          const int dst = D(src);
          const int x2 = dst / N, y2 = dst % N;
          if (x2 % n2 != s) {
            fail(fmt::format("Delta(lambda_{} (x) 1) moves the spectator coordinate s = {}", p.name1(z), p.name2(s)));
            continue;
          }
          if (ag.gamma_perm[z](g * N + y) != (x2 / n2) * N + y2)
            fail(fmt::format("closed formula and Delta(lambda_{} (x) 1) differ at (g,h,t) = ({}, {})", p.name1(z),
                             p.name1(g), W.point_name(y)));
        }
    for (int w = 0; w < n1; ++w)
      if (!(ag.gamma_perm[z] * ag.gamma_perm[w] == ag.gamma_perm[p.g1.mul(z, w)]))
        fail(fmt::format("gamma(lambda_{})gamma(lambda_{}) != gamma(lambda_{})", p.name1(z), p.name1(w),
                         p.name1(p.g1.mul(z, w))));
  }

  // (F (x) 1) gamma(lambda_z) (F* (x) 1) is block diagonal; with
  // F[k,h] = <h, g^_k> / sqrt|G1| the block at g^_k is T_z evaluated at the
  // conjugate character.
  double off = 0.0, diag = 0.0;
  for (int z = 0; z < n1; ++z) {
    const SparseMatrix X = fourier_conjugate(ag, ag.gamma(z));
    for (int k = 0; k < n1; ++k)
      for (int l = 0; l < n1; ++l) {
        const SparseMatrix B = leg_block(X, N, k, l);
        if (k == l)
          diag = std::max(diag, max_abs_diff(B, ag.gamma_dft[z][ag.chars.conjugate(k)]));
        else
          off = std::max(off, max_abs(B));
      }
  }
  if (off > tol) fail(fmt::format("off-block mass {} after DFT", sci(off)));
  if (diag > tol) fail(fmt::format("DFT blocks differ from T_z by {}", sci(diag)));
  return PropertyVerdict{"gamma_constructions", mismatches == 0, std::max({static_cast<double>(mismatches), off, diag}),
                         witness,
                         fmt::format("closed formula = compressed Delta(lambda_z (x) 1) for all s; multiplicative; "
                                     "off-block mass {}, block residual {}",
                                     sci(off), sci(diag))};
}

PropertyVerdict check_comodule(const ActionGamma& ag, const MultiplicativeUnitary& W, double tol) {
  const int n1 = ag.n1, N = ag.N;
  const TensorShape shape{n1, N, N};
  const Permutation W23 = embed_leg(W.perm, shape, {2, 3});
  double res = 0.0, decomp = 0.0;
  std::optional<std::string> witness;
  for (int z = 0; z < n1; ++z) {
    const SparseMatrix X = ag.gamma(z);
    const SparseMatrix lhs = conjugate(W23, embed_leg(X, shape, {1, 3}));

    // X = sum_w lambda_w (x) Y_w with Y_w = |G1|^{-1} sum_ij conj(lambda_w[i,j]) X_ij
    SparseMatrix rhs(static_cast<long>(n1) * N * N, static_cast<long>(n1) * N * N);
    SparseMatrix rebuilt(static_cast<long>(n1) * N, static_cast<long>(n1) * N);
    for (int w = 0; w < n1; ++w) {
      SparseMatrix Y(N, N);
      for (int i = 0; i < n1; ++i)
        for (SparseMatrix::InnerIterator it(ag.lambda[w], i); it; ++it)
          Y += std::conj(it.value()) * leg_block(X, N, i, static_cast<int>(it.col()));
      Y /= static_cast<double>(n1);
      rebuilt += kron(ag.lambda[w], Y);
      rhs += kron(ag.gamma(w), Y);
    }
    decomp = std::max(decomp, max_abs_diff(rebuilt, X));
    const double r = max_abs_diff(lhs, rhs);
    if (r > tol && !witness) witness = fmt::format("(id (x) Delta)gamma != (gamma (x) id)gamma at z = {}", ag.pair->name1(z));
    res = std::max(res, r);
  }
  if (decomp > tol && !witness) witness = "gamma(lambda_z) not in C (x) B(H)";
  res = std::max(res, decomp);
  return PropertyVerdict{"comodule", res <= tol, res, witness,
                         fmt::format("{} generators on a space of dimension {}", n1, static_cast<long>(n1) * N * N)};
}

PropertyVerdict check_podles(const ActionGamma& ag, const OperatorSpace& A, double tol) {
  const int n1 = ag.n1, N = ag.N;
  const auto a = A.independent_generators();
  const SparseMatrix I1 = sparse_identity(n1);
  std::vector<SparseMatrix> lhs, rhs;
  for (int z = 0; z < n1; ++z) {
    const SparseMatrix G = ag.gamma(z);
    for (const auto& x : a) {
      lhs.push_back(SparseMatrix(G * kron(I1, x)));
      rhs.push_back(kron(ag.lambda[z], x));
    }
  }
  const OperatorSpace L = span_basis(std::move(lhs), tol);
  const OperatorSpace R = span_basis(std::move(rhs), tol);
  const SpanComparison cmp = span_equal(L, R, tol);
  const long want = static_cast<long>(n1) * static_cast<long>(a.size());
  const bool ok = L.rank() == want && cmp.equal;
  std::optional<std::string> witness;
  if (!ok) witness = fmt::format("rank {} vs dim(C)dim(A) = {}, span residual {}", L.rank(), want, sci(cmp.residual));
  (void)N;
  return PropertyVerdict{"podles", ok, cmp.residual, witness,
                         fmt::format("rank span{{gamma(c)(1 (x) a)}} = {} = {}*{}", L.rank(), n1, a.size())};
}

PropertyVerdict check_ergodic(const ActionGamma& ag, double tol) {
  const int n1 = ag.n1, N = ag.N;
  const SparseMatrix I = sparse_identity(N);
  std::vector<SparseMatrix> cols;
  for (int z = 0; z < n1; ++z) cols.push_back(SparseMatrix(ag.gamma(z) - kron(ag.lambda[z], I)));
  const int r = span_basis(std::move(cols), tol).rank();
  const int dim = n1 - r;
  return PropertyVerdict{"ergodic", dim == 1, static_cast<double>(dim - 1),
                         dim == 1 ? std::nullopt : std::optional<std::string>(fmt::format("fixed-point space has dimension {}", dim)),
                         fmt::format("solutions of gamma(x) = x (x) 1 in the group algebra: dimension {}", dim)};
}

FaithfulResult check_faithful(const ActionGamma& ag, const OperatorSpace& A, double tol) {
  const int n1 = ag.n1, N = ag.N;
  std::vector<SparseMatrix> gens;
  for (int z = 0; z < n1; ++z) {
    const SparseMatrix X = fourier_conjugate(ag, ag.gamma(z));
    for (int k = 0; k < n1; ++k)
      for (int l = 0; l < n1; ++l) {
        SparseMatrix B = leg_block(X, N, k, l);
        if (B.nonZeros() > 0) gens.push_back(std::move(B));
      }
  }
  OperatorSpace S = span_basis(std::move(gens), tol);
  const long limit = static_cast<long>(A.rank()) * A.rank() + 1;
  int rounds = 0;
  while (rounds < limit) {
    ++rounds;
    const auto b = S.independent_generators();
    std::vector<SparseMatrix> next = b;
    for (const auto& x : b) next.push_back(SparseMatrix(x.adjoint()));
    for (const auto& x : b)
      for (const auto& y : b) next.push_back(prune(SparseMatrix(x * y), 1e-13));
    OperatorSpace S2 = span_basis(std::move(next), tol);
    const bool stable = S2.rank() == S.rank();
    S = std::move(S2);
    if (stable) break;
  }
  if (rounds >= limit) throw std::runtime_error("check_faithful: generation did not stabilize");

  const SpanComparison cmp = span_equal(S, A, tol);
  const bool faithful = S.rank() == A.rank() && cmp.equal;
  const TrivialityWitness bt = beta_triviality(*ag.pair);
  const bool predicted = !bt.trivial;
  PropertyVerdict v{"faithful", faithful, faithful ? cmp.residual : static_cast<double>(A.rank() - S.rank()),
                    faithful ? std::nullopt : std::optional<std::string>(fmt::format("generated *-algebra has rank {} < dim A = {}", S.rank(), A.rank())),
                    fmt::format("beta {} ({}); the 'iff beta non-trivial' criterion predicts {}: {}",
                                bt.trivial ? "trivial" : "non-trivial", bt.witness, predicted ? "faithful" : "not faithful",
                                predicted == faithful ? "agrees" : "DISAGREES"),
                    true};
  return FaithfulResult{v, S.rank(), rounds};
}

PropertyVerdict check_isometry_criterion(const FiniteMatchedPair& mp) {
  const FiniteGroup& A = mp.g1;
  if (!A.is_abelian()) throw std::invalid_argument("check_isometry_criterion: G1 must be abelian");
  long violations = 0;
  std::optional<std::string> witness;
  for (int g1 = 0; g1 < mp.n1; ++g1)
    for (int g2 = 0; g2 < mp.n1; ++g2)
      for (int h = 0; h < mp.n1; ++h)
        for (int t = 0; t < mp.n2; ++t) {
          const int l = mp.beta(mp.alpha(h, t), g1);
          const int r = mp.beta(mp.alpha(A.mul(h, g2), t), g1);
          if (l != r && !violations++)
            witness = fmt::format("(g1,g2,h,t) = ({}, {}, {}, {}): beta_{{alpha_h(t)}}(g1) = {} but beta_{{alpha_{{hg2}}(t)}}(g1) = {}",
                                  mp.name1(g1), mp.name1(g2), mp.name1(h), mp.name2(t), mp.name1(l), mp.name1(r));
        }
  return PropertyVerdict{"isometric", violations == 0, static_cast<double>(violations), witness,
                         fmt::format("isometry criterion over {} tuples", static_cast<long>(mp.n1) * mp.n1 * mp.n1 * mp.n2),
                         true};
}

PropertyVerdict check_isometry_criterion(const AnalyticMatchedPair& pair, const SampledConfig& cfg) {
  const AnalyticMatchedPair p = pair.g1_abelian ? pair : dual_orientation(pair);
  if (!p.g1_abelian) throw std::invalid_argument("check_isometry_criterion: neither factor is abelian");
  struct Outcome {
    bool defined = false;
    double d = 0.0;
    std::string text;
  };
  std::vector<Outcome> out(cfg.samples);
  parallel_for(static_cast<std::size_t>(cfg.samples), cfg.jobs, [&](std::size_t i) {
    auto rng = sample_rng(cfg.seed, i);
    const Point g1 = p.sample1(rng), g2 = p.sample1(rng), h = p.sample1(rng), t = p.sample2(rng);
    const auto a1 = p.alpha(h, t);
    const auto a2 = p.alpha(p.mul1(h, g2), t);
    if (!a1 || !a2) return;
    const auto l = p.beta(*a1, g1);
    const auto r = p.beta(*a2, g1);
    if (!l || !r) return;
    Outcome& o = out[i];
    o.defined = true;
    for (int k = 0; k < p.dim1; ++k) o.d = std::max(o.d, std::abs((*l)[k] - (*r)[k]) / (1.0 + std::abs((*l)[k])));
    if (o.d > cfg.tol)
      o.text = fmt::format("sample {}: g1 = {:.6g}, g2 = {:.6g}, h = {:.6g}, t = ({:.6g}, {:.6g}): {:.6g} vs {:.6g}", i,
                           g1[0], g2[0], h[0], t[0], t[1], (*l)[0], (*r)[0]);
  });
  long defined = 0, violations = 0;
  double worst = 0.0;
  std::optional<std::string> witness;
  for (const auto& o : out) {
    if (!o.defined) continue;
    ++defined;
    worst = std::max(worst, o.d);
    if (!o.text.empty() && !violations++) witness = o.text;
  }
  return PropertyVerdict{"isometric", violations == 0, worst, witness,
                         fmt::format("{} violations among {} defined samples (seed {}){}", violations, defined, cfg.seed,
                                     p.dual != pair.dual ? "; factors exchanged so that G1 is abelian" : ""),
                         true};
}

PropertyVerdict classify(const ClassifyInput& in) {
  if (!in.faithful || !in.isometric) throw std::invalid_argument("classify: faithful and isometric verdicts required");
  const std::string ahat = fmt::format("Ahat {} (max commutator {})", in.Ahat.commutative ? "commutative" : "non-commutative",
                                       sci(in.Ahat.max_commutator));
  if (!(in.faithful->pass && in.isometric->pass))
    return PropertyVerdict{"classical", true, 0.0, std::nullopt,
                           fmt::format("hypothesis not met (faithful {}, isometric {}); no assertion; A {}; {}",
                                       in.faithful->pass ? "yes" : "no", in.isometric->pass ? "yes" : "no",
                                       in.A.commutative ? "commutative" : "non-commutative", ahat)};
  const bool ok = in.A.commutative;
  return PropertyVerdict{"classical", ok, in.A.max_commutator,
                         ok ? std::nullopt : std::optional<std::string>("faithful and isometric but A is non-commutative"),
                         fmt::format("faithful and isometric, so A must be commutative: A {}; {}",
                                     ok ? "commutative" : "non-commutative", ahat)};
}

}  // namespace bqg
