#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bqg/analytic.hpp"
#include "bqg/report.hpp"

namespace bqg {

// exp(-1/(1-u^2)) with u = 2x - 3, supported on [1,2]
double bump(double x);

struct DecayConfig {
  std::vector<double> p_list{0, 8, 16, 32, 64, 128};
  double rel_tol = 1e-8;
  int max_panels = 256;
  int jobs = 1;
  std::vector<double> self_test_s{1.25, 1.5, 1.75};
  double self_test_tol = 1e-6;
};

struct DecayTable {
  std::string pair;  // the orientation actually used
  std::vector<double> p;
  std::vector<std::complex<double>> D;
  std::vector<int> panels;
  double f_norm2 = 0.0, eta_norm2 = 0.0;  // ||f||_2^2, ||eta||_2^2
  std::vector<double> self_test_rel;      // per self_test_s
  bool strictly_decreasing = false;       // |D| over the nonzero frequencies
};

// D(p) = int int f(g)^2 eta(s)^2 <beta_s(g), p> dmu1(g) dmu2(s), with the
// norm identity ||G_s||_1 = ||f||_2^2 eta(s)^2 checked at the self-test points.
// A pair whose G1 is not abelian is read in the exchanged orientation.
// Throws std::runtime_error if the quadrature does not converge.
DecayTable c0_decay(const AnalyticMatchedPair& pair, const DecayConfig& cfg = {});

PropertyVerdict c0_decay_verdict(const DecayTable& t, const DecayConfig& cfg = {});

}  // namespace bqg
