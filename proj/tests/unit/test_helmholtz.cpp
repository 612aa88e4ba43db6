#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "torus/error.hpp"
#include "torus/helmholtz.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"

using namespace torus;
using torus::test::max_diff;
using torus::test::two_pi;

namespace {

double h1_norm(const VectorField& v) {
  const double a = l2_norm_exact(v);
  const double b = gradient_seminorm(v, 1);
  return std::sqrt(a * a + b * b);
}

ScalarField zero_mean_scalar(const SpectralLayout& layout, std::mt19937_64& rng) {
  auto p = random_scalar_field(layout, rng, 0.1);
  p.set({0, 0, 0}, 0.0);
  return p;
}

}  // namespace

TEST(LerayProject, DivergenceFreeInputUnchanged) {
  std::mt19937_64 rng(1);
  const auto u = random_solenoidal(SpectralLayout(1.3, 9), rng, 0.1);
  EXPECT_LE(max_diff(leray_project(u), u), 1e-14 * u.max_abs_coeff());
}

TEST(LerayProject, AnnihilatesGradients) {
  std::mt19937_64 rng(2);
  const auto phi = zero_mean_scalar(SpectralLayout(2.0, 8), rng);
  const auto g = grad(phi);
  EXPECT_LE(leray_project(g).max_abs_coeff(), 1e-14 * g.max_abs_coeff());
}

TEST(LerayProject, SingleModeByHand) {
  VectorField u(SpectralLayout(two_pi, 1));
  u.set({1, 0, 0}, {1.0, 1.0, 0.0});
  const auto c = leray_project(u).coeff({1, 0, 0});
  EXPECT_NEAR(std::abs(c[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[1] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c[2]), 0.0, 1e-15);
}

TEST(LerayProject, MeanIsKept) {
  VectorField u(SpectralLayout(two_pi, 2));
  u.set({0, 0, 0}, {1.0, 2.0, 3.0});
  const auto c = leray_project(u).coeff({0, 0, 0});
  EXPECT_EQ(c[0], Complex(1.0));
  EXPECT_EQ(c[2], Complex(3.0));
}

TEST(LerayProject, ProjectionProperties) {
  std::mt19937_64 rng(3);
  const SpectralLayout layout(1.7, 10);
  const double top = layout.wavenumber() * layout.bandwidth();
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_vector_field(layout, rng, 0.05);
    const auto v = random_vector_field(layout, rng, 0.05);
    const auto pu = leray_project(u);
    const double nu = l2_norm_exact(u);
    EXPECT_LE(l2_norm_exact(leray_project(pu) - pu), 1e-13 * nu);
    EXPECT_LE(std::abs(inner_l2(pu, v) - inner_l2(u, leray_project(v))), 1e-13 * nu * l2_norm_exact(v));
    EXPECT_LE(std::abs(inner_l2(pu, gradient_part(u))), 1e-13 * nu * nu);
    EXPECT_LE(l2_norm_exact(div(pu)), 1e-13 * top * nu);
  }
}

TEST(Decompose, PartsAreExact) {
  std::mt19937_64 rng(4);
  const auto u = random_vector_field(SpectralLayout(2.4, 8), rng, 0.1);
  const auto d = decompose(u);
  EXPECT_LE(max_diff(d.solenoidal + d.gradient_part, u), 1e-15 * u.max_abs_coeff());
  EXPECT_LE(div(d.solenoidal).max_abs_coeff(), 1e-13 * u.max_abs_coeff());
  EXPECT_LE(rot(d.gradient_part).max_abs_coeff(), 1e-13 * u.max_abs_coeff());
  EXPECT_EQ(mean(d.potential), 0.0);
  EXPECT_LE(max_diff(grad(d.potential), d.gradient_part), 1e-13 * u.max_abs_coeff());
  EXPECT_LE(max_diff(leray_project(u) + grad(potential_of(gradient_part(u))), u), 1e-13 * u.max_abs_coeff());
}

TEST(CommutesWithDerivative, WithinContract) {
  std::mt19937_64 rng(5);
  const SpectralLayout layout(1.1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_vector_field(layout, rng, 0.05);
    for (int axis = 0; axis < 3; ++axis) EXPECT_LE(commutes_with_derivative_check(u, axis), 1e-13 * h1_norm(u));
  }
}

TEST(CommutesWithDerivative, ZeroAndGradientFields) {
  std::mt19937_64 rng(6);
  const SpectralLayout layout(1.0, 5);
  const auto g = grad(zero_mean_scalar(layout, rng));
  for (int axis = 0; axis < 3; ++axis) {
    EXPECT_EQ(commutes_with_derivative_check(VectorField(layout), axis), 0.0);
    EXPECT_LE(commutes_with_derivative_check(g, axis), 1e-13 * h1_norm(g));
  }
  EXPECT_THROW(commutes_with_derivative_check(g, 3), InvalidArgument);
}

TEST(RecoverPressure, ConstantVelocityGivesZero) {
  const SpectralLayout layout(two_pi, 4);
  VectorField u(layout);
  u.set({0, 0, 0}, {1.0, 0.5, -1.0});
  EXPECT_EQ(recover_pressure(VectorField(layout), u).max_abs_coeff(), 0.0);
}

TEST(RecoverPressure, InvertsKnownGradient) {
  std::mt19937_64 rng(7);
  const SpectralLayout layout(1.9, 9);
  const auto phi = zero_mean_scalar(layout, rng);
  const auto p = recover_pressure(grad(phi), VectorField(layout));
  EXPECT_LE(max_diff(p, phi), 1e-13 * phi.max_abs_coeff());
}

TEST(RecoverPressure, ShearFieldGivesZero) {
  const SpectralLayout layout(two_pi, 4);
  const auto u = shear_mode(layout, 2.0);
  EXPECT_LE(recover_pressure(VectorField(layout), u).max_abs_coeff(), 1e-15);
}

TEST(RecoverPressure, MatchesPressureOfManufacturedNonlinearity) {
  std::mt19937_64 rng(8);
  const SpectralLayout layout(two_pi, 6);
  const auto u = random_solenoidal(layout, rng, 0.3);
  const auto phi = zero_mean_scalar(layout, rng);
  // f = D u + grad phi: the pressure must be phi
  const auto f = nonlinear_D(u) + grad(phi);
  EXPECT_LE(max_diff(recover_pressure(f, u), phi), 1e-12 * phi.max_abs_coeff());
}

TEST(DualNorm, ConstantField) {
  const double ell = 2.3;
  VectorField f(SpectralLayout(ell, 3));
  f.set({0, 0, 0}, {-1.5, 0.0, 0.0});
  EXPECT_NEAR(dual_norm(f, 1), 1.5 * std::pow(ell, 1.5), 1e-13);
}

TEST(DualNorm, GradientFieldVanishes) {
  std::mt19937_64 rng(9);
  const auto g = grad(zero_mean_scalar(SpectralLayout(1.0, 6), rng));
  EXPECT_LE(dual_norm(g, 1), 1e-14 * l2_norm_exact(g));
  EXPECT_LE(dual_norm(g, 3), 1e-14 * l2_norm_exact(g));
}

TEST(DualNorm, SingleUnitMode) {
  const SpectralLayout layout(two_pi, 1);
  VectorField v(layout);
  v.set({0, 1, 0}, {1.0, 0.0, 0.0});
  v *= 1.0 / l2_norm_exact(v);
  EXPECT_NEAR(dual_norm(v, 1), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(DualNorm, RejectsNonPositiveOrder) {
  EXPECT_THROW(dual_norm(VectorField(SpectralLayout(1.0, 1)), 0), InvalidArgument);
}

TEST(DualNorm, BoundsEveryQuotientAndSupremizerAttainsIt) {
  std::mt19937_64 rng(10);
  const SpectralLayout layout(1.6, 6);
  const auto f = random_vector_field(layout, rng, 0.1);
  const double d = dual_norm(f, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = random_solenoidal(layout, rng, 0.05 * (trial % 7));
    EXPECT_LE(std::abs(inner_l2(f, v)) / h1_norm(v), d * (1.0 + 1e-10));
  }
  const auto best = dual_norm_supremizer(f);
  EXPECT_LE(div(best).max_abs_coeff(), 1e-14 * best.max_abs_coeff());
  EXPECT_NEAR(std::abs(inner_l2(f, best)) / h1_norm(best), d, 1e-12 * d);
}
