#pragma once

#include <map>
#include <string>
#include <vector>

#include "torus/estimates.hpp"

namespace torus {

/// {lhs2, rhs2, factor, ratio, pass, strict_pass, drift_integral, lps: [{s, r, admissible, value}], norms: {...}}
/// with keys in fixed order. Doubles are written in shortest round-trip form.
std::string certificate_json(const EnergyCertificate& certificate, const std::vector<LpsReport>& lps,
                             const std::map<std::string, double>& norms);

}  // namespace torus
