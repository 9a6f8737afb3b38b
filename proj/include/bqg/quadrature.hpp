#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace bqg {

struct QuadratureResult {
  std::complex<double> value;
  double l1 = 0.0;  // integral of |f| on the final grid
  int panels = 0;   // per axis
  bool converged = false;
};

using BoxIntegrand = std::function<std::complex<double>(std::span<const double>)>;

// Tensor-product composite Gauss-Legendre (20 nodes per panel) on the box
// [lo, hi]; panels per axis double until two successive values agree to
// rel_tol (with a roundoff floor proportional to the L1 mass).
QuadratureResult integrate_box(const BoxIntegrand& f, const std::vector<double>& lo, const std::vector<double>& hi,
                               double rel_tol = 1e-10, int max_panels = 256, int jobs = 1);

}  // namespace bqg
