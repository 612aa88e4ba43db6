#include "torus/certificate_json.hpp"

#include <cmath>

#include <json.hpp>

namespace torus {

namespace {

// JSON has no infinity; exponents r = inf are written as the string "inf".
nlohmann::ordered_json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

}  // namespace

std::string certificate_json(const EnergyCertificate& certificate, const std::vector<LpsReport>& lps,
                             const std::map<std::string, double>& norms) {
  nlohmann::ordered_json out;
  out["lhs2"] = number(certificate.lhs2);
  out["rhs2"] = number(certificate.rhs2);
  out["factor"] = number(certificate.factor);
  out["ratio"] = number(certificate.ratio);
  out["pass"] = certificate.pass;
  out["strict_pass"] = certificate.strict_pass;
  out["drift_integral"] = number(certificate.drift_integral);
  out["lps"] = nlohmann::ordered_json::array();
  for (const auto& r : lps)
    out["lps"].push_back({{"s", number(r.s)}, {"r", number(r.r)}, {"admissible", r.admissible}, {"value", number(r.value)}});
  out["norms"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : norms) out["norms"][key] = number(value);
  return out.dump(2) + "\n";
}

}  // namespace torus
