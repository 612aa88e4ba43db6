#pragma once

#include <vector>

namespace torus {

/// Data of the integral inequality Y(t) <= A + int_a^t (B Y + C Y^{1-gamma}) ds on a sampled grid.
struct PerovInput {
  double A = 0.0;
  double gamma = 1.0;  // in (0, 1]; gamma = 1 is the classical Gronwall case
  std::vector<double> times;
  std::vector<double> B;
  std::vector<double> C;
};

/// Upper bound for Y at every grid point:
///   (A^gamma exp(gamma int_a^t B) + gamma int_a^t C(s) exp(gamma int_s^t B) ds)^{1/gamma},
/// with trapezoid quadrature for the inner integrals.
std::vector<double> perov_bound(const PerovInput& in);

}  // namespace torus
