#include "bqg/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "bqg/parallel.hpp"
#include "bqg/quadrature.hpp"

namespace bqg {

namespace {

constexpr double kGuard = 1e-6;

double log_uniform_signed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::log(8.0), std::log(8.0));
  std::bernoulli_distribution sign(0.5);
  const double x = std::exp(u(rng));
  return sign(rng) ? -x : x;
}

double log_uniform_positive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::log(8.0), std::log(8.0));
  return std::exp(u(rng));
}

double uniform_additive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  return u(rng);
}

AnalyticMatchedPair make_axb() {
  AnalyticMatchedPair p;
  p.name = "axb";
  p.dim1 = p.dim2 = 1;
  p.g1_abelian = true;
  p.unit1 = p.unit2 = {1.0, 0.0};
  auto mul = [](const Point& x, const Point& y) { return Point{x[0] * y[0], 0.0}; };
  auto inv = [](const Point& x) { return Point{1.0 / x[0], 0.0}; };
  p.mul1 = p.mul2 = mul;
  p.inv1 = p.inv2 = inv;
  // alpha_g(s) = gs / (s(g-1)+1), beta_s(g) = s(g-1)+1
  p.alpha = [](const Point& g, const Point& s) -> std::optional<Point> {
    const double den = s[0] * (g[0] - 1.0) + 1.0;
    if (std::abs(den) < kGuard) return std::nullopt;
    return Point{g[0] * s[0] / den, 0.0};
  };
  p.beta = [](const Point& s, const Point& g) -> std::optional<Point> {
    const double v = s[0] * (g[0] - 1.0) + 1.0;
    if (std::abs(v) < kGuard) return std::nullopt;
    return Point{v, 0.0};
  };
  p.mu1_density = p.mu2_density = [](const Point& x) { return 1.0 / std::abs(x[0]); };
  p.sample1 = p.sample2 = [](std::mt19937_64& rng) { return Point{log_uniform_signed(rng), 0.0}; };
  p.phase1 = p.phase2 = [](const Point& x) { return std::log(std::abs(x[0])); };
  p.log1 = p.log2 = {true, false};
  p.theta_closed = [](const Point& g, const Point& s) -> std::optional<double> {
    const double den = g[0] - 1.0 + s[0];
    if (std::abs(den) < kGuard) return std::nullopt;
    return std::abs(g[0]) / std::abs(den);
  };
  return p;
}

AnalyticMatchedPair make_split() {
  AnalyticMatchedPair p;
  p.name = "split";
  p.dim1 = 2;
  p.dim2 = 1;
  p.g1_abelian = false;
  // G1 = {(a,b) : a > 0}, (a,b)(c,d) = (ac, ad + b/c); G2 = (R, +)
  p.unit1 = {1.0, 0.0};
  p.unit2 = {0.0, 0.0};
  p.mul1 = [](const Point& x, const Point& y) { return Point{x[0] * y[0], x[0] * y[1] + x[1] / y[0]}; };
  p.inv1 = [](const Point& x) { return Point{1.0 / x[0], -x[1]}; };
  p.mul2 = [](const Point& x, const Point& y) { return Point{x[0] + y[0], 0.0}; };
  p.inv2 = [](const Point& x) { return Point{-x[0], 0.0}; };
  p.alpha = [](const Point& g, const Point& x) -> std::optional<Point> {
    const double v = g[0] + g[1] * x[0];
    if (std::abs(v) < kGuard) return std::nullopt;
    return Point{x[0] / (g[0] * v), 0.0};
  };
  p.beta = [](const Point& x, const Point& g) -> std::optional<Point> {
    const double v = g[0] + g[1] * x[0];
    if (std::abs(v) < kGuard) return std::nullopt;
    if (v > 0) return Point{v, g[1]};
    return Point{-v, -g[1]};
  };
  p.mu1_density = [](const Point& x) { return 1.0 / (x[0] * x[0]); };
  p.mu2_density = [](const Point&) { return 1.0; };
  p.sample1 = [](std::mt19937_64& rng) {
    const double a = log_uniform_positive(rng);
    return Point{a, uniform_additive(rng)};
  };
  p.sample2 = [](std::mt19937_64& rng) { return Point{uniform_additive(rng), 0.0}; };
  p.phase1 = nullptr;  // G1 is not abelian
  p.phase2 = [](const Point& x) { return x[0]; };
  p.log1 = {true, false};
  p.log2 = {false, false};
  p.theta_closed = [](const Point& g, const Point& s) -> std::optional<double> {
    const double v = g[0] - g[1] * s[0];
    if (std::abs(v) < kGuard) return std::nullopt;
    return g[0] * g[0] / (v * v);
  };
  return p;
}

double discrepancy(const Point& l, const Point& r, int dim) {
  double d = 0.0;
  for (int k = 0; k < dim; ++k) d = std::max(d, std::abs(l[k] - r[k]) / (1.0 + std::abs(l[k])));
  return d;
}

std::string fmt_point(const Point& x, int dim) {
  return dim == 1 ? fmt::format("{:.6g}", x[0]) : fmt::format("({:.6g}, {:.6g})", x[0], x[1]);
}

}  // namespace

AnalyticMatchedPair analytic_preset(const std::string& name) {
  if (name == "axb") return make_axb();
  if (name == "split") return make_split();
  throw std::invalid_argument("unknown analytic preset: " + name);
}

AnalyticMatchedPair dual_orientation(const AnalyticMatchedPair& p) {
  AnalyticMatchedPair d;
  d.name = p.name;
  d.dual = !p.dual;
  d.dim1 = p.dim2;
  d.dim2 = p.dim1;
  d.unit1 = p.unit2;
  d.unit2 = p.unit1;
  d.mul1 = p.mul2;
  d.mul2 = p.mul1;
  d.inv1 = p.inv2;
  d.inv2 = p.inv1;
  d.alpha = [b = p.beta](const Point& g, const Point& h) { return b(g, h); };
  d.beta = [a = p.alpha](const Point& h, const Point& g) { return a(h, g); };
  d.mu1_density = p.mu2_density;
  d.mu2_density = p.mu1_density;
  d.sample1 = p.sample2;
  d.sample2 = p.sample1;
  d.phase1 = p.phase2;
  d.phase2 = p.phase1;
  d.log1 = p.log2;
  d.log2 = p.log1;
  // abelian G2 is what the exchanged orientation is used for
  d.g1_abelian = static_cast<bool>(p.phase2);
  return d;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

bool close_rel(double lhs, double rhs, double tol) { return std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs)); }

PropertyVerdict verify_compatibility_sampled(const AnalyticMatchedPair& p, const SampledConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("verify_compatibility_sampled: need at least one sample");
  struct Outcome {
    bool skipped = false;
    double worst = 0.0;
    std::string witness;
  };
  std::vector<Outcome> out(cfg.samples);
  parallel_for(static_cast<std::size_t>(cfg.samples), cfg.jobs, [&](std::size_t i) {
    auto rng = sample_rng(cfg.seed, i);
    const Point g = p.sample1(rng), s = p.sample1(rng), h = p.sample2(rng), t = p.sample2(rng);
    Outcome& o = out[i];
    const Point gs = p.mul1(g, s), ht = p.mul2(h, t);

    const auto a_gs_h = p.alpha(gs, h);
    const auto a_s_h = p.alpha(s, h);
    const auto a_g_ash = a_s_h ? p.alpha(g, *a_s_h) : std::nullopt;
    const auto b_h_gs = p.beta(h, gs);
    const auto b_ash_g = a_s_h ? p.beta(*a_s_h, g) : std::nullopt;
    const auto b_h_s = p.beta(h, s);
    const auto b_ht_g = p.beta(ht, g);
    const auto b_t_g = p.beta(t, g);
    const auto b_h_btg = b_t_g ? p.beta(h, *b_t_g) : std::nullopt;
    const auto a_g_ht = p.alpha(g, ht);
    const auto a_btg_h = b_t_g ? p.alpha(*b_t_g, h) : std::nullopt;
    const auto a_g_t = p.alpha(g, t);
    const auto a_g_1 = p.alpha(g, p.unit2);
    const auto b_h_1 = p.beta(h, p.unit1);
    if (!a_gs_h || !a_g_ash || !b_h_gs || !b_ash_g || !b_h_s || !b_ht_g || !b_h_btg || !a_g_ht || !a_btg_h || !a_g_t ||
        !a_g_1 || !b_h_1) {
      o.skipped = true;
      return;
    }
    const struct {
      const char* rel;
      Point lhs, rhs;
      int dim;
    } checks[] = {
        {"alpha_{gs}(h) = alpha_g(alpha_s(h))", *a_gs_h, *a_g_ash, p.dim2},
        {"beta_h(gs) = beta_{alpha_s(h)}(g) beta_h(s)", *b_h_gs, p.mul1(*b_ash_g, *b_h_s), p.dim1},
        {"beta_{ht}(g) = beta_h(beta_t(g))", *b_ht_g, *b_h_btg, p.dim1},
        {"alpha_g(ht) = alpha_{beta_t(g)}(h) alpha_g(t)", *a_g_ht, p.mul2(*a_btg_h, *a_g_t), p.dim2},
        {"alpha_g(1) = 1", *a_g_1, p.unit2, p.dim2},
        {"beta_h(1) = 1", *b_h_1, p.unit1, p.dim1},
    };
    for (const auto& c : checks) {
      const double d = discrepancy(c.lhs, c.rhs, c.dim);
      if (d > o.worst) o.worst = d;
      if (d > cfg.tol && o.witness.empty())
        o.witness = fmt::format("sample {}: {} fails at g={}, s={}, h={}, t={} (lhs {}, rhs {})", i, c.rel,
                                fmt_point(g, p.dim1), fmt_point(s, p.dim1), fmt_point(h, p.dim2), fmt_point(t, p.dim2),
                                fmt_point(c.lhs, c.dim), fmt_point(c.rhs, c.dim));
    }
  });

  long skipped = 0, violations = 0;
  double worst = 0.0;
  std::optional<std::string> witness;
  for (const auto& o : out) {
    if (o.skipped) {
      ++skipped;
      continue;
    }
    worst = std::max(worst, o.worst);
    if (!o.witness.empty() && !violations++) witness = o.witness;
  }
  const long defined = cfg.samples - skipped;
  if (defined == 0) throw std::runtime_error("verify_compatibility_sampled: every sampled tuple was skipped");
  return PropertyVerdict{"compat", violations == 0, worst, witness,
                         fmt::format("{} violations among {} defined tuples ({} skipped near the excluded set, seed {})",
                                     violations, defined, skipped, cfg.seed)};
}

AnalyticWitness analytic_triviality_witness(const AnalyticMatchedPair& p, bool alpha, const SampledConfig& cfg) {
  for (long i = 0; i < cfg.samples; ++i) {
    auto rng = sample_rng(cfg.seed, i);
    const Point g = p.sample1(rng), h = p.sample2(rng);
    if (alpha) {
      const auto v = p.alpha(g, h);
      if (v && discrepancy(*v, h, p.dim2) > cfg.tol)
        return {true, fmt::format("alpha_{}({}) = {}", fmt_point(g, p.dim1), fmt_point(h, p.dim2), fmt_point(*v, p.dim2))};
    } else {
      const auto v = p.beta(h, g);
      if (v && discrepancy(*v, g, p.dim1) > cfg.tol)
        return {true, fmt::format("beta_{}({}) = {}", fmt_point(h, p.dim2), fmt_point(g, p.dim1), fmt_point(*v, p.dim1))};
    }
  }
  return {false, fmt::format("no witness found in {} samples", cfg.samples)};
}

// ---------------------------------------------------------------------------

RNDerivative::RNDerivative(AnalyticMatchedPair pair, bool use_closed_form)
    : pair_(std::move(pair)), closed_(use_closed_form) {
  if (closed_ && !pair_.theta_closed) throw std::invalid_argument("no closed-form Radon-Nikodym derivative for " + pair_.name);
}

std::optional<double> RNDerivative::theta(const Point& g, const Point& s) const {
  if (closed_) return pair_.theta_closed(g, s);
  return theta_finite_difference(g, s);
}

std::optional<double> RNDerivative::theta_finite_difference(const Point& g, const Point& s) const {
  const Point sinv = pair_.inv2(s);
  const int d = pair_.dim1;
  const auto center = pair_.beta(sinv, g);
  if (!center) return std::nullopt;
  double J[2][2] = {{0, 0}, {0, 0}};
  for (int k = 0; k < d; ++k) {
    const double h = 1e-6 * std::max(std::abs(g[k]), 1.0);
    Point gp = g, gm = g;
    gp[k] += h;
    gm[k] -= h;
    const auto fp = pair_.beta(sinv, gp);
    const auto fm = pair_.beta(sinv, gm);
    if (!fp || !fm) return std::nullopt;
    for (int r = 0; r < d; ++r) J[r][k] = ((*fp)[r] - (*fm)[r]) / (2.0 * h);
  }
  const double det = d == 1 ? J[0][0] : J[0][0] * J[1][1] - J[0][1] * J[1][0];
  return std::abs(det) * pair_.mu1_density(*center) / pair_.mu1_density(g);
}

ChangeOfVariables rn_self_test(const RNDerivative& rn, const Point& s, int jobs) {
  const AnalyticMatchedPair& p = rn.pair();
  const int d = p.dim1;
  constexpr double sigma = 0.05, half = 8 * sigma, center_log = 0.4;
  auto coord = [&](const Point& x, int k, double& c) {
    if (p.log1[k]) {
      if (x[k] <= 0) return false;
      c = std::log(x[k]) - center_log;
    } else {
      c = x[k];
    }
    return true;
  };
  auto F = [&](const Point& x) {
    double e = 0.0;
    for (int k = 0; k < d; ++k) {
      double c;
      if (!coord(x, k, c)) return 0.0;
      e += c * c;
    }
    return std::exp(-e / (2 * sigma * sigma));
  };

  std::vector<double> lo(d), hi(d);
  for (int k = 0; k < d; ++k) {
    lo[k] = p.log1[k] ? std::exp(center_log - half) : -half;
    hi[k] = p.log1[k] ? std::exp(center_log + half) : half;
  }
  auto to_point = [&](std::span<const double> x) {
    Point q{0.0, 0.0};
    for (int k = 0; k < d; ++k) q[k] = x[k];
    return q;
  };

  const auto rhs = integrate_box([&](std::span<const double> x) {
    const Point g = to_point(x);
    return std::complex<double>(F(g) * p.mu1_density(g));
  }, lo, hi, 1e-10, 256, jobs);

  // the support of g -> F(beta_{s^-1}(g)) is the image of the window under beta_s
  std::vector<double> blo(d, 1e300), bhi(d, -1e300);
  for (int corner = 0; corner < (1 << d); ++corner) {
    Point c{0.0, 0.0};
    for (int k = 0; k < d; ++k) c[k] = (corner >> k) & 1 ? hi[k] : lo[k];
    const auto img = p.beta(s, c);
    if (!img) throw std::runtime_error("rn_self_test: window meets the excluded set");
    for (int k = 0; k < d; ++k) {
      blo[k] = std::min(blo[k], (*img)[k]);
      bhi[k] = std::max(bhi[k], (*img)[k]);
    }
  }
  for (int k = 0; k < d; ++k) {
    const double pad = 0.1 * (bhi[k] - blo[k]);
    blo[k] -= pad;
    bhi[k] += pad;
  }
  const Point sinv = p.inv2(s);
  const auto lhs = integrate_box([&](std::span<const double> x) {
    const Point g = to_point(x);
    const auto b = p.beta(sinv, g);
    if (!b) return std::complex<double>(0.0);
    const double fb = F(*b);
    if (fb == 0.0) return std::complex<double>(0.0);
    const auto th = rn.theta(g, s);
    if (!th) return std::complex<double>(0.0);
    return std::complex<double>(fb * *th * p.mu1_density(g));
  }, blo, bhi, 1e-10, 256, jobs);

  ChangeOfVariables out;
  out.lhs = lhs.value.real();
  out.rhs = rhs.value.real();
  out.rel_error = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

}  // namespace bqg
