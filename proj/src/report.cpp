#include "bqg/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace bqg {

nlohmann::json PropertyVerdict::to_json() const {
  nlohmann::json j{{"property", property}, {"pass", pass}, {"residual", report_round(residual)},
                   {"kind", classification ? "classification" : "invariant"}};
  if (witness) j["witness"] = *witness;
  if (cross_check) j["cross_check"] = *cross_check;
  return j;
}

PropertyVerdict PropertyVerdict::from_json(const nlohmann::json& j) {
  PropertyVerdict v;
  v.property = j.at("property").get<std::string>();
  v.pass = j.at("pass").get<bool>();
  v.residual = j.at("residual").get<double>();
  if (j.contains("witness")) v.witness = j.at("witness").get<std::string>();
  if (j.contains("cross_check")) v.cross_check = j.at("cross_check").get<std::string>();
  v.classification = j.value("kind", std::string("invariant")) == "classification";
  return v;
}

bool VerificationReport::pass() const {
  for (const auto& v : verdicts)
    if (!v.classification && !v.pass) return false;
  return true;
}

const PropertyVerdict* VerificationReport::find(const std::string& property) const {
  for (const auto& v : verdicts)
    if (v.property == property) return &v;
  return nullptr;
}

double report_round(double x) {
  if (x == 0.0) return 0.0;
  if (!std::isfinite(x)) return x;
  return std::stod(fmt::format("{:.2e}", x));
}

std::string sci(double x) { return fmt::format("{:.2e}", x); }

}  // namespace bqg
