#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "torus/field.hpp"
#include "torus/problems.hpp"

namespace torus::test {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) out = std::max(out, std::abs(a.data()[i] - b.data()[i]));
  return out;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  return std::max({max_diff(a[0], b[0]), max_diff(a[1], b[1]), max_diff(a[2], b[2])});
}

/// Sparse random field: `modes` random wave vectors within the cutoff, random coefficients.
inline ScalarField sparse_scalar(const SpectralLayout& layout, std::mt19937_64& rng, int modes) {
  const auto all = layout.modes();
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::normal_distribution<double> normal;
  ScalarField u(layout);
  for (int i = 0; i < modes; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    u.set(all[pick(rng)], Complex(re, im));
  }
  return u;
}

}  // namespace torus::test
