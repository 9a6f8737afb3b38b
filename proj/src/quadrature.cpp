#include "bqg/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "bqg/parallel.hpp"

namespace bqg {

int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

constexpr int kNodes = 20;

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kNodes>;
    Rule r;
    const auto& ax = G::abscissa();
    const auto& wt = G::weights();
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t i = 0; i < ax.size(); ++i) {
      if (ax[i] == 0.0) continue;
      r.x.push_back(-ax[i]);
      r.w.push_back(wt[i]);
    }
    for (std::size_t i = 0; i < ax.size(); ++i) {
      r.x.push_back(ax[i]);
      r.w.push_back(wt[i]);
    }
    return r;
  }();
  return rule;
}

struct AxisGrid {
  std::vector<double> x, w;
};

AxisGrid axis_grid(double lo, double hi, int panels) {
  const Rule& r = gauss_rule();
  AxisGrid g;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t k = 0; k < r.x.size(); ++k) {
      g.x.push_back(mid + 0.5 * h * r.x[k]);
      g.w.push_back(0.5 * h * r.w[k]);
    }
  }
  return g;
}

std::pair<std::complex<double>, double> tensor_sum(const BoxIntegrand& f, const std::vector<AxisGrid>& grids, int jobs) {
  const std::size_t dim = grids.size();
  const std::size_t n0 = grids[0].x.size();
  std::vector<std::complex<double>> partial(n0);
  std::vector<double> mass(n0);
  std::size_t inner = 1;
  for (std::size_t d = 1; d < dim; ++d) inner *= grids[d].x.size();
  parallel_for(n0, jobs, [&](std::size_t i0) {
    std::vector<double> pt(dim);
    pt[0] = grids[0].x[i0];
    std::complex<double> acc = 0.0;
    double m = 0.0;
    for (std::size_t lin = 0; lin < inner; ++lin) {
      double w = grids[0].w[i0];
      std::size_t r = lin;
      for (std::size_t d = dim - 1; d >= 1; --d) {
        const std::size_t k = r % grids[d].x.size();
        r /= grids[d].x.size();
        pt[d] = grids[d].x[k];
        w *= grids[d].w[k];
      }
      const std::complex<double> v = f(std::span<const double>(pt));
      acc += w * v;
      m += w * std::abs(v);
    }
    partial[i0] = acc;
    mass[i0] = m;
  });
  std::complex<double> total = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    total += partial[i];
    l1 += mass[i];
  }
  return {total, l1};
}

}  // namespace

QuadratureResult integrate_box(const BoxIntegrand& f, const std::vector<double>& lo, const std::vector<double>& hi,
                               double rel_tol, int max_panels, int jobs) {
  if (lo.empty() || lo.size() != hi.size()) throw std::invalid_argument("integrate_box: bad box");
  QuadratureResult prev;
  for (int panels = 1; panels <= max_panels; panels *= 2) {
    std::vector<AxisGrid> grids;
    for (std::size_t d = 0; d < lo.size(); ++d) grids.push_back(axis_grid(lo[d], hi[d], panels));
    const auto [value, l1] = tensor_sum(f, grids, jobs);
    QuadratureResult cur{value, l1, panels, false};
    if (panels > 1) {
      const double floor = 64.0 * 2.2e-16 * l1;
      if (std::abs(cur.value - prev.value) <= rel_tol * std::abs(cur.value) + floor) {
        cur.converged = true;
        return cur;
      }
    }
    prev = cur;
  }
  return prev;
}

}  // namespace bqg
