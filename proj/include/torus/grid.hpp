#pragma once

#include <array>
#include <span>
#include <vector>

#include "torus/field.hpp"

namespace torus {

/// n^3 real samples on x_j = j ell / n, index (j1 * n + j2) * n + j3.
struct SampledGrid {
  double ell = 0.0;
  int n = 0;
  std::vector<double> values;

  double& at(int j1, int j2, int j3) { return values[(static_cast<std::size_t>(j1) * n + j2) * n + j3]; }
  double at(int j1, int j2, int j3) const { return values[(static_cast<std::size_t>(j1) * n + j2) * n + j3]; }
  double cell_volume() const {
    const double h = ell / n;
    return h * h * h;
  }
};

SampledGrid synthesize(const ScalarField& u, int n);
std::array<SampledGrid, 3> synthesize(const VectorField& u, int n);
ScalarField analyze(const SampledGrid& grid, int cutoff);

/// Pointwise Euclidean magnitude of a sampled vector field.
SampledGrid magnitude(const std::array<SampledGrid, 3>& components);

/// Rectangle-rule L^p(Q) norm of samples; p = infinity gives the grid maximum of |value|.
/// Summation order is fixed, so results are reproducible across thread counts.
double lp_norm(const SampledGrid& grid, double p);

/// L^p norms by quadrature on an n^3 grid; exact for p = 2 when n >= 2K+1.
double lp_norm(const ScalarField& u, double p, int n);
double lp_norm(const VectorField& u, double p, int n);

}  // namespace torus
