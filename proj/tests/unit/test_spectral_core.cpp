#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "torus/error.hpp"
#include "torus/fft.hpp"
#include "torus/grid.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"
#include "torus/reference.hpp"

using namespace torus;
using torus::test::max_diff;
using torus::test::two_pi;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double brute_sobolev(const ScalarField& u, double s) {
  const int b = u.layout().bandwidth();
  double sum = 0.0;
  for (int a = -b; a <= b; ++a)
    for (int c = -b; c <= b; ++c)
      for (int d = -b; d <= b; ++d) {
        const double kk = a * a + c * c + d * d;
        sum += std::pow(1.0 + kk, s) * std::norm(u.coeff({a, c, d}));
      }
  return std::sqrt(sum);
}

bool hermitian(const ScalarField& u) {
  for (const auto& k : u.layout().modes())
    if (std::abs(u.coeff(-k) - std::conj(u.coeff(k))) > 0.0) return false;
  return true;
}

ScalarField sine_x2(const SpectralLayout& layout) {
  ScalarField u(layout);
  u.set({0, 1, 0}, Complex(0.0, -0.5));
  return u;
}

}  // namespace

TEST(SobolevNorm, ZeroField) {
  const SpectralLayout layout(two_pi, 5);
  EXPECT_EQ(sobolev_norm(ScalarField(layout), 3.0), 0.0);
  EXPECT_EQ(sobolev_norm(VectorField(layout), -1.0), 0.0);
}

TEST(SobolevNorm, SingleMode) {
  ScalarField u(SpectralLayout(two_pi, 2));
  u.set({1, 0, 0}, 0.5);
  EXPECT_NEAR(sobolev_norm(u, 2.0), std::sqrt(2.0), 1e-15);
}

TEST(SobolevNorm, MatchesBruteForceSum) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralLayout layout(1.7, 9);
    const auto u = test::sparse_scalar(layout, rng, 10);
    EXPECT_NEAR(sobolev_norm(u, 3.0), brute_sobolev(u, 3.0), 1e-13 * brute_sobolev(u, 3.0));
    const VectorField v(u, 2.0 * u, ScalarField(layout));
    EXPECT_NEAR(sobolev_norm(v, 1.5), std::sqrt(5.0) * brute_sobolev(u, 1.5), 1e-13 * brute_sobolev(u, 1.5) * 3);
  }
}

TEST(L2Norm, ConstantField) {
  const double ell = 3.0;
  ScalarField u(SpectralLayout(ell, 1));
  u.set({0, 0, 0}, -2.5);
  EXPECT_NEAR(l2_norm_exact(u), 2.5 * std::pow(ell, 1.5), 1e-13);
}

TEST(L2Norm, SineByHandParseval) {
  const double ell = 3.0;
  const auto u = sine_x2(SpectralLayout(ell, 2));
  EXPECT_NEAR(l2_norm_exact(u), std::pow(ell, 1.5) / std::sqrt(2.0), 1e-13);
}

TEST(L2Norm, InnerProductConsistentAndParseval) {
  std::mt19937_64 rng(2);
  const SpectralLayout layout(2.2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_vector_field(layout, rng, 0.1);
    const double n = l2_norm_exact(u);
    EXPECT_NEAR(inner_l2(u, u), n * n, 1e-14 * n * n);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c)
      for (const auto& z : u[c].data()) sum += std::norm(z);
    EXPECT_NEAR(n * n, layout.volume() * sum, 1e-14 * n * n);
  }
}

TEST(L2Norm, MismatchedDomainThrows) {
  const ScalarField a(SpectralLayout(1.0, 2));
  const ScalarField b(SpectralLayout(2.0, 2));
  EXPECT_THROW(inner_l2(a, b), IncompatibleFields);
}

TEST(Field, SetOutsideCutoffThrows) {
  ScalarField u(SpectralLayout(1.0, 2));
  EXPECT_THROW(u.set({1, 1, 1}, 1.0), InvalidArgument);
}

TEST(Operators, GradientOfConstantVanishes) {
  ScalarField p(SpectralLayout(two_pi, 4));
  p.set({0, 0, 0}, 3.0);
  EXPECT_EQ(grad(p).max_abs_coeff(), 0.0);
}

TEST(Operators, LaplacianMultiplier) {
  const double ell = 1.5;
  const SpectralLayout layout(ell, 6);
  ScalarField u(layout);
  const WaveVector k{1, -2, 1};
  u.set(k, Complex(0.3, 0.7));
  const double kappa = two_pi / ell;
  const auto lu = laplacian(u);
  EXPECT_NEAR(std::abs(lu.coeff(k) - (-6.0 * kappa * kappa) * Complex(0.3, 0.7)), 0.0, 1e-12);
}

TEST(Operators, DeRhamIdentitiesOnRandomFields) {
  std::mt19937_64 rng(3);
  const SpectralLayout layout(2.0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_scalar_field(layout, rng, 0.05);
    const auto u = random_vector_field(layout, rng, 0.05);
    const double scale = laplacian(u).max_abs_coeff();
    EXPECT_LE(rot(grad(p)).max_abs_coeff(), 1e-13 * laplacian(p).max_abs_coeff());
    EXPECT_LE(div(rot(u)).max_abs_coeff(), 1e-13 * scale);
    EXPECT_LE(max_diff(grad(div(u)) - rot(rot(u)), laplacian(u)), 1e-13 * scale);
  }
}

TEST(Operators, OutputsStayHermitian) {
  std::mt19937_64 rng(4);
  const auto u = random_vector_field(SpectralLayout(1.0, 5), rng, 0.1);
  EXPECT_TRUE(hermitian(div(u)));
  EXPECT_TRUE(hermitian(rot(u)[1]));
  EXPECT_TRUE(hermitian(convect(u, u)[2]));
}

TEST(NegLaplacianPow, ZeroPowerIsIdentityOnZeroMean) {
  std::mt19937_64 rng(5);
  auto u = random_scalar_field(SpectralLayout(two_pi, 6), rng, 0.1);
  u.set({0, 0, 0}, 0.0);
  EXPECT_EQ(max_diff(neg_laplacian_pow(u, 0.0), u), 0.0);
}

TEST(NegLaplacianPow, FirstPowerMultiplier) {
  ScalarField u(SpectralLayout(two_pi, 2));
  u.set({1, 1, 0}, Complex(1.0, 2.0));
  EXPECT_NEAR(std::abs(neg_laplacian_pow(u, 1.0).coeff({1, 1, 0}) - 2.0 * Complex(1.0, 2.0)), 0.0, 1e-14);
}

TEST(NegLaplacianPow, NegativePowerRejectsMean) {
  ScalarField u(SpectralLayout(two_pi, 2));
  u.set({0, 0, 0}, 1.0);
  EXPECT_THROW(neg_laplacian_pow(u, -0.5), InvalidArgument);
  u.set({0, 0, 0}, 0.0);
  u.set({1, 0, 0}, 1.0);
  EXPECT_NEAR(std::abs(neg_laplacian_pow(u, -1.0).coeff({1, 0, 0}) - 1.0), 0.0, 1e-15);
}

TEST(NegLaplacianPow, SummedDerivativeNorms) {
  std::mt19937_64 rng(6);
  const SpectralLayout layout(1.3, 8);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_scalar_field(layout, rng, 0.1);
    u.set({0, 0, 0}, 0.0);
    // sum over ordered index tuples (i1, ..., ij) of ||d_i1 ... d_ij u||^2
    std::vector<ScalarField> level{u};
    for (int j = 1; j <= 3; ++j) {
      std::vector<ScalarField> next;
      for (const auto& v : level)
        for (int axis = 0; axis < 3; ++axis) next.push_back(partial(v, axis));
      level = std::move(next);
      double sum = 0.0;
      for (const auto& v : level) sum += std::pow(l2_norm_exact(v), 2);
      const double expected = std::sqrt(sum);
      EXPECT_NEAR(l2_norm_exact(neg_laplacian_pow(u, j / 2.0)), expected, 1e-12 * expected);
      EXPECT_NEAR(gradient_seminorm(u, j), expected, 1e-12 * expected);
    }
  }
}

TEST(Grid, ConstantSynthesis) {
  ScalarField u(SpectralLayout(2.0, 3));
  u.set({0, 0, 0}, 1.25);
  for (int n : {4, 8, 16}) {
    const auto g = synthesize(u, n);
    for (double v : g.values) EXPECT_NEAR(v, 1.25, 1e-15);
  }
}

TEST(Grid, SineSamplesMatchClosedForm) {
  const double ell = 2.5;
  const auto u = sine_x2(SpectralLayout(ell, 1));
  const int n = 8;
  const auto g = synthesize(u, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) EXPECT_NEAR(g.at(a, b, c), std::sin(two_pi * b / n), 1e-13);
}

TEST(Grid, RoundTripIsExact) {
  std::mt19937_64 rng(7);
  for (int cutoff : {1, 4, 9, 14}) {
    const SpectralLayout layout(1.0, cutoff);
    const auto u = random_scalar_field(layout, rng, 0.0);
    const int n = minimal_grid_size(layout);
    EXPECT_LE(max_diff(analyze(synthesize(u, n), cutoff), u), 1e-13 * u.max_abs_coeff());
    EXPECT_LE(max_diff(analyze(synthesize(u, 2 * n), cutoff), u), 1e-13 * u.max_abs_coeff());
  }
}

TEST(Grid, FftMatchesDirectSummation) {
  std::mt19937_64 rng(8);
  const SpectralLayout layout(1.0, 6);
  const auto u = random_scalar_field(layout, rng, 0.0);
  const auto fast = synthesize(u, 8);
  const auto slow = reference::synthesize(u, 8);
  for (std::size_t i = 0; i < fast.values.size(); ++i) EXPECT_NEAR(fast.values[i], slow.values[i], 1e-12);
}

TEST(Grid, UndersampledAndInvalidSizesThrow) {
  const ScalarField u(SpectralLayout(1.0, 9));  // K = 3 needs n >= 7
  EXPECT_THROW(synthesize(u, 4), Undersampled);
  EXPECT_THROW(synthesize(u, 12), InvalidArgument);
  EXPECT_NO_THROW(synthesize(u, 8));
}

TEST(LpNorm, ConstantVectorField) {
  const double ell = 1.7;
  VectorField u(SpectralLayout(ell, 2));
  u[0].set({0, 0, 0}, -3.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0}) EXPECT_NEAR(lp_norm(u, p, 8), 3.0 * std::pow(ell, 3.0 / p), 1e-12);
  EXPECT_NEAR(lp_norm(u, inf, 8), 3.0, 1e-14);
}

TEST(LpNorm, QuadratureL2MatchesParseval) {
  std::mt19937_64 rng(9);
  const SpectralLayout layout(2.0, 10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_vector_field(layout, rng, 0.1);
    EXPECT_NEAR(lp_norm(u, 2.0, 16), l2_norm_exact(u), 1e-10 * l2_norm_exact(u));
  }
}

TEST(LpNorm, SineMaximum) {
  const auto u = sine_x2(SpectralLayout(two_pi, 1));
  EXPECT_NEAR(lp_norm(u, inf, 64), 1.0, 1e-3);
}

TEST(LpNorm, RejectsExponentBelowOne) {
  const ScalarField u(SpectralLayout(1.0, 1));
  EXPECT_THROW(lp_norm(u, 0.5, 8), InvalidArgument);
}

TEST(LpNorm, HoelderInequality) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SpectralLayout layout(1.4, 6);
  const int n = 16;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = synthesize(random_scalar_field(layout, rng, 0.2), n);
    const auto g = synthesize(random_scalar_field(layout, rng, 0.2), n);
    SampledGrid fg = f;
    for (std::size_t i = 0; i < fg.values.size(); ++i) fg.values[i] *= g.values[i];
    // 1/q1 + 1/q2 = 1/q
    const double q = 1.0 + 3.0 * unit(rng);
    const double theta = 0.05 + 0.9 * unit(rng);
    const double q1 = q / theta;
    const double q2 = q / (1.0 - theta);
    EXPECT_LE(lp_norm(fg, q), lp_norm(f, q1) * lp_norm(g, q2) * (1.0 + 1e-6));
  }
}

TEST(Convect, ConstantFieldHasNoSelfTransport) {
  VectorField u(SpectralLayout(two_pi, 4));
  u.set({0, 0, 0}, {1.0, -2.0, 0.5});
  EXPECT_EQ(nonlinear_D(u).max_abs_coeff(), 0.0);
}

TEST(Convect, ShearFieldHasNoSelfTransport) {
  const SpectralLayout layout(3.0, 4);
  VectorField u(layout);
  u[0] = sine_x2(layout);
  EXPECT_LE(nonlinear_D(u).max_abs_coeff(), 1e-15);
}

TEST(Convect, MatchesBruteForceConvolution) {
  std::mt19937_64 rng(11);
  for (int cutoff : {1, 3, 5, 8}) {
    const SpectralLayout layout(1.9, cutoff);
    const auto w = random_vector_field(layout, rng, 0.0);
    const auto u = random_vector_field(layout, rng, 0.0);
    const auto fast = convect(w, u);
    const auto slow = reference::convect(w, u);
    EXPECT_LE(max_diff(fast, slow), 1e-12 * slow.max_abs_coeff()) << "cutoff " << cutoff;
  }
}

TEST(Convect, BilinearOfEqualArgumentsIsTwiceD) {
  std::mt19937_64 rng(12);
  const auto u = random_vector_field(SpectralLayout(1.0, 6), rng, 0.1);
  const auto b = bilinear_B(u, u);
  EXPECT_LE(max_diff(b, 2.0 * nonlinear_D(u)), 1e-13 * b.max_abs_coeff());
}

TEST(Convect, SkewSymmetryForDivergenceFreeDrift) {
  std::mt19937_64 rng(13);
  const SpectralLayout layout(two_pi, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = random_solenoidal(layout, rng, 0.1);
    const auto u = random_vector_field(layout, rng, 0.1);
    const double scale = l2_norm_exact(w) * l2_norm_exact(u) * gradient_seminorm(u, 1);
    EXPECT_LE(std::abs(inner_l2(convect(w, u), u)), 1e-10 * scale);
  }
}

TEST(Convect, RejectsCoarseGridAndMismatchedFields) {
  const VectorField u(SpectralLayout(1.0, 4));  // K = 2 needs n >= 7
  EXPECT_THROW(convect(u, u, 4), Undersampled);
  EXPECT_THROW(convect(u, VectorField(SpectralLayout(1.0, 5))), IncompatibleFields);
  EXPECT_THROW(convect(u, VectorField(SpectralLayout(2.0, 4))), IncompatibleFields);
}
