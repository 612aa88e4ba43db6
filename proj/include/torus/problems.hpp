#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "torus/field.hpp"
#include "torus/forcing.hpp"

namespace torus {

/// u = (0, a sin(kappa x1), 0): an exact solution of the unforced equations that decays as
/// a exp(-mu kappa^2 t), since D u = 0.
VectorField shear_mode(const SpectralLayout& layout, double amplitude);

/// u = a (sin kx cos ky cos kz, -cos kx sin ky cos kz, 0) with k = kappa.
VectorField taylor_green(const SpectralLayout& layout, double amplitude);

/// Gaussian coefficients scaled by exp(-decay (k,k)); real-valued, nonzero mean.
VectorField random_vector_field(const SpectralLayout& layout, std::mt19937_64& rng, double decay);
ScalarField random_scalar_field(const SpectralLayout& layout, std::mt19937_64& rng, double decay);
/// Leray projection of random_vector_field.
VectorField random_solenoidal(const SpectralLayout& layout, std::mt19937_64& rng, double decay);

/// u*(x,t) = sum_a g_a(t) U_a(x) with g_a(t) = 1 + b_a sin(omega_a t + phi_a) and smooth
/// divergence-free U_a. The forcing f = d/dt u* - mu Delta u* + D u* makes u* an exact solution,
/// and its restriction to the layout is an exact solution of the truncated system.
class ManufacturedSolution {
 public:
  struct Params {
    double mu = 0.1;
    double omega = 10.0;
    double decay = 0.7;
    double amplitude = 1.0;
    std::uint64_t seed = 7;
  };

  ManufacturedSolution(SpectralLayout layout, Params params);

  const SpectralLayout& layout() const { return layout_; }
  VectorField exact(double t) const;
  /// Analytic forcing with time derivatives through order 3.
  Forcing forcing() const;

 private:
  static constexpr int terms = 3;
  double g(int a, double t, int order) const;
  VectorField forcing_derivative(double t, int order) const;

  SpectralLayout layout_;
  Params params_;
  std::array<double, terms> b_{}, omega_{}, phi_{};
  std::vector<VectorField> shapes_;
  std::vector<VectorField> laplacians_;
  std::vector<VectorField> products_;  // convect(U_a, U_b) at index a * terms + b
};

}  // namespace torus
