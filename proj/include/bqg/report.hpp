#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bqg {

struct PropertyVerdict {
  std::string property;
  bool pass = false;
  double residual = 0.0;
  std::optional<std::string> witness;
  std::optional<std::string> cross_check;
  // Classification verdicts report whether a property holds (faithful,
  // isometric); they do not count towards the overall pass.
  bool classification = false;

  nlohmann::json to_json() const;
  static PropertyVerdict from_json(const nlohmann::json& j);
};

// A named group of verdicts.
struct VerificationReport {
  std::vector<PropertyVerdict> verdicts;

  bool pass() const;  // every non-classification verdict passes
  const PropertyVerdict* find(const std::string& property) const;
  void add(PropertyVerdict v) { verdicts.push_back(std::move(v)); }
};

// Residuals are rounded to three significant digits in reports so that the
// body is stable under last-bit floating-point noise.
double report_round(double x);
std::string sci(double x);

}  // namespace bqg
