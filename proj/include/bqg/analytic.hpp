#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "bqg/report.hpp"

namespace bqg {

// A point in a chart of at most two coordinates; unused coordinates stay 0.
using Point = std::array<double, 2>;

struct AnalyticMatchedPair {
  std::string name;
  bool dual = false;  // roles of G1 and G2 exchanged
  int dim1 = 1, dim2 = 1;
  bool g1_abelian = true;

  Point unit1{}, unit2{};
  std::function<Point(const Point&, const Point&)> mul1, mul2;
  std::function<Point(const Point&)> inv1, inv2;

  // alpha_g(h) and beta_h(g); nullopt inside the guarded excluded set
  std::function<std::optional<Point>(const Point& g, const Point& h)> alpha;
  std::function<std::optional<Point>(const Point& h, const Point& g)> beta;

  std::function<double(const Point&)> mu1_density, mu2_density;
  std::function<Point(std::mt19937_64&)> sample1, sample2;

  // character phases: <y, p> = exp(i p phase(y))
  std::function<double(const Point&)> phase1, phase2;
  // chart coordinates that are multiplicative (Gaussian bumps live in log scale there)
  std::array<bool, 2> log1{}, log2{};

  // closed-form Radon-Nikodym derivative of g -> beta_{s^-1}(g), if known
  std::function<std::optional<double>(const Point& g, const Point& s)> theta_closed;
};

AnalyticMatchedPair analytic_preset(const std::string& name);  // axb | split
// The same factorization read with the two factors exchanged: alpha' = beta, beta' = alpha.
AnalyticMatchedPair dual_orientation(const AnalyticMatchedPair& p);

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

struct SampledConfig {
  long samples = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int jobs = 1;
};

// Verdict "compat"; throws std::runtime_error if every tuple was skipped.
PropertyVerdict verify_compatibility_sampled(const AnalyticMatchedPair& p, const SampledConfig& cfg);

struct AnalyticWitness {
  bool found = false;
  std::string text;
};
AnalyticWitness analytic_triviality_witness(const AnalyticMatchedPair& p, bool alpha, const SampledConfig& cfg);

class RNDerivative {
 public:
  explicit RNDerivative(AnalyticMatchedPair pair, bool use_closed_form = false);

  // |d/dmu1 beta_{s^-1}(g)| by central differences in the chart
  std::optional<double> theta(const Point& g, const Point& s) const;
  std::optional<double> theta_finite_difference(const Point& g, const Point& s) const;

  const AnalyticMatchedPair& pair() const { return pair_; }

 private:
  AnalyticMatchedPair pair_;
  bool closed_;
};

struct ChangeOfVariables {
  double lhs = 0.0, rhs = 0.0, rel_error = 0.0;
};
// int F(beta_{s^-1}(g)) theta(g,s) dmu1(g) against int F dmu1 for a Gaussian bump F.
ChangeOfVariables rn_self_test(const RNDerivative& rn, const Point& s, int jobs = 1);

bool close_rel(double lhs, double rhs, double tol);

}  // namespace bqg
