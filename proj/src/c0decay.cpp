#include "bqg/c0decay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "bqg/quadrature.hpp"

namespace bqg {

double bump(double x) {
  const double u = 2.0 * x - 3.0;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

namespace {

double bump_sq(const Point& x, int dim) {
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= bump(x[k]) * bump(x[k]);
  return v;
}

Point point_from(std::span<const double> x, int offset, int dim) {
  Point p{};
  for (int k = 0; k < dim; ++k) p[k] = x[offset + k];
  return p;
}

QuadratureResult checked(const BoxIntegrand& f, const std::vector<double>& lo, const std::vector<double>& hi,
                         const DecayConfig& cfg, const std::string& what) {
  QuadratureResult r = integrate_box(f, lo, hi, cfg.rel_tol, cfg.max_panels, cfg.jobs);
  if (!r.converged)
    throw std::runtime_error(fmt::format("c0_decay: quadrature for {} did not converge with {} panels per axis", what,
                                         cfg.max_panels));
  return r;
}

double squared_norm(const std::function<double(const Point&)>& density, int dim, const DecayConfig& cfg) {
  const BoxIntegrand f = [&](std::span<const double> x) {
    const Point p = point_from(x, 0, dim);
    return std::complex<double>(bump_sq(p, dim) * density(p));
  };
  return checked(f, std::vector<double>(dim, 1.0), std::vector<double>(dim, 2.0), cfg, "a bump norm").value.real();
}

// Bounding box of beta_s([1,2]^dim), padded by 10% of its width.
void image_box(const AnalyticMatchedPair& p, const Point& s, std::vector<double>& lo, std::vector<double>& hi) {
  const int dim = p.dim1, n = 33;
  lo.assign(dim, INFINITY);
  hi.assign(dim, -INFINITY);
  const int total = dim == 1 ? n : n * n;
  for (int i = 0; i < total; ++i) {
    Point g{1.0 + static_cast<double>(i % n) / (n - 1), 0.0};
    if (dim == 2) g[1] = 1.0 + static_cast<double>(i / n) / (n - 1);
    const auto b = p.beta(s, g);
    if (!b) throw std::runtime_error("c0_decay: beta_s undefined on the support of f");
    for (int k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], (*b)[k]);
      hi[k] = std::max(hi[k], (*b)[k]);
    }
  }
  for (int k = 0; k < dim; ++k) {
    const double pad = 0.1 * (hi[k] - lo[k]) + 1e-3;
    lo[k] -= pad;
    hi[k] += pad;
  }
}

}  // namespace

DecayTable c0_decay(const AnalyticMatchedPair& pair, const DecayConfig& cfg) {
  const AnalyticMatchedPair p = pair.g1_abelian ? pair : dual_orientation(pair);
  if (!p.g1_abelian || !p.phase1) throw std::invalid_argument("c0_decay: neither factor is abelian");
  const int d1 = p.dim1, d2 = p.dim2;

  DecayTable t;
  t.pair = p.dual ? p.name + " (factors exchanged)" : p.name;
  t.f_norm2 = squared_norm(p.mu1_density, d1, cfg);
  t.eta_norm2 = squared_norm(p.mu2_density, d2, cfg);

  // s-coordinates first, then g
  const std::vector<double> lo(d1 + d2, 1.0), hi(d1 + d2, 2.0);
  for (double freq : cfg.p_list) {
    const BoxIntegrand f = [&](std::span<const double> x) {
      const Point s = point_from(x, 0, d2), g = point_from(x, d2, d1);
      const double w = bump_sq(g, d1) * bump_sq(s, d2);
      if (w == 0.0) return std::complex<double>(0.0);
      const auto b = p.beta(s, g);
      if (!b) throw std::runtime_error("c0_decay: beta_s(g) undefined on the bump supports");
      return w * p.mu1_density(g) * p.mu2_density(s) * std::polar(1.0, freq * p.phase1(*b));
    };
    const QuadratureResult r = checked(f, lo, hi, cfg, fmt::format("D({})", freq));
    t.p.push_back(freq);
    t.D.push_back(r.value);
    t.panels.push_back(r.panels);
  }

  t.strictly_decreasing = true;
  double prev = INFINITY;
  for (std::size_t i = 0; i < t.p.size(); ++i) {
    if (t.p[i] == 0.0) continue;
    const double a = std::abs(t.D[i]);
    if (!(a < prev)) t.strictly_decreasing = false;
    prev = a;
  }

  const RNDerivative rn(p, false);
  for (double v : cfg.self_test_s) {
    Point s{v, 0.0};
    if (d2 == 2) s[1] = v;
    std::vector<double> blo, bhi;
    image_box(p, s, blo, bhi);
    const Point sinv = p.inv2(s);
    const BoxIntegrand G = [&](std::span<const double> x) {
      const Point g = point_from(x, 0, d1);
      const auto b = p.beta(sinv, g);
      if (!b) return std::complex<double>(0.0);
      const double w = bump_sq(*b, d1);
      if (w == 0.0) return std::complex<double>(0.0);
      const auto th = rn.theta(g, s);
      if (!th) throw std::runtime_error("c0_decay: Radon-Nikodym derivative undefined on the support");
      return std::complex<double>(w * bump_sq(s, d2) * *th * p.mu1_density(g));
    };
    const double lhs = checked(G, blo, bhi, cfg, "||G_s||_1").value.real();
    const double rhs = t.f_norm2 * bump_sq(s, d2);
    t.self_test_rel.push_back(std::abs(lhs - rhs) / std::abs(rhs));
  }
  return t;
}

PropertyVerdict c0_decay_verdict(const DecayTable& t, const DecayConfig& cfg) {
  double worst = 0.0;
  for (double r : t.self_test_rel) worst = std::max(worst, r);
  double trivial = 0.0;
  for (std::size_t i = 0; i < t.p.size(); ++i)
    if (t.p[i] == 0.0) trivial = std::abs(t.D[i] - t.f_norm2 * t.eta_norm2) / (t.f_norm2 * t.eta_norm2);
  const bool ok = t.strictly_decreasing && worst <= cfg.self_test_tol && trivial <= cfg.self_test_tol;

  std::string table;
  for (std::size_t i = 0; i < t.p.size(); ++i)
    table += fmt::format("{}|D({})| = {}", i ? ", " : "", t.p[i], sci(std::abs(t.D[i])));
  std::optional<std::string> witness;
  if (!t.strictly_decreasing) witness = "|D(p)| not strictly decreasing: " + table;
  else if (worst > cfg.self_test_tol) witness = fmt::format("||G_s||_1 self-test off by {}", sci(worst));
  else if (trivial > cfg.self_test_tol) witness = fmt::format("D(0) differs from ||f||^2 ||eta||^2 by {}", sci(trivial));
  return PropertyVerdict{"c0decay", ok, std::max(worst, trivial), witness,
                         fmt::format("{}: {}; self-test max rel error {}", t.pair, table, sci(worst))};
}

}  // namespace bqg
