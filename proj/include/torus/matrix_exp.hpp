#pragma once

#include <Eigen/Dense>

namespace torus {

/// exp(A) by scaling and squaring with a truncated Taylor series: A is scaled by 2^-s until
/// ||A||_1 <= 1/2, the series is summed until the next term is negligible against the
/// requested tolerance, and the result squared s times.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double tolerance = 1e-12);

}  // namespace torus
