#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace torus {

struct SelftestOptions {
  std::vector<int> cutoffs{4};
  double ell = 6.283185307179586;
  std::uint64_t seed = 20240601;
  int samples = 10;
  /// Basis dump to check instead of a freshly built basis.
  std::optional<std::string> basis_path;
};

struct SelftestCheck {
  std::string name;
  int cutoff = 0;
  double value = 0.0;  // worst observed defect
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options);
void print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks);

}  // namespace torus
