#include "torus/matrix_exp.hpp"

#include <cmath>

#include "torus/error.hpp"

namespace torus {

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double tolerance) {
  if (a.rows() != a.cols()) throw InvalidArgument("matrix exponential needs a square matrix");
  if (!a.allFinite()) throw InvalidArgument("matrix exponential of a non-finite matrix");
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd x = a / std::ldexp(1.0, squarings);

  // Squaring amplifies the truncation error by about 2^s, so the series tolerance is tightened.
  const double series_tol = tolerance * std::ldexp(1.0, -squarings) * 1e-3;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int q = 1; q <= 40; ++q) {
    term = term * x / static_cast<double>(q);
    sum += term;
    const double term_norm = term.cwiseAbs().colwise().sum().maxCoeff();
    // Remainder after this term is bounded by term_norm * ||x|| / (q+1) / (1 - ||x||/(q+2)).
    if (term_norm * 0.5 / (q + 1) * 2.0 <= series_tol) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace torus
