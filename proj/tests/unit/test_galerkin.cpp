#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"
#include "torus/eigenbasis.hpp"
#include "torus/error.hpp"
#include "torus/helmholtz.hpp"
#include "torus/kernels.hpp"
#include "torus/linearized.hpp"
#include "torus/matrix_exp.hpp"
#include "torus/navier_stokes.hpp"
#include "torus/operators.hpp"

using namespace torus;
using torus::test::max_diff;
using torus::test::two_pi;

namespace {

FieldTrajectory frozen(const VectorField& w) {
  FieldTrajectory t;
  t.times = {0.0};
  t.fields = {w};
  return t;
}

std::shared_ptr<const DivFreeBasis> basis_of(double ell, int cutoff) {
  return std::make_shared<const DivFreeBasis>(DivFreeBasis::build(ell, cutoff));
}

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SolverConfig config_for(const SpectralLayout& layout, double T, double dt, Scheme scheme = Scheme::if_rk4) {
  SolverConfig c;
  c.ell = layout.ell();
  c.cutoff = layout.cutoff();
  c.T = T;
  c.dt = dt;
  c.scheme = scheme;
  return c;
}

double fitted_order(const std::vector<double>& dts, const std::vector<double>& errors) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dts.size());
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double x = std::log(dts[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(MatrixExponential, AgreesWithIndependentImplementation) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int size : {1, 3, 8, 20}) {
    for (double scale : {0.01, 1.0, 10.0, 60.0}) {
      Eigen::MatrixXd a(size, size);
      for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = scale * normal(rng) / std::sqrt(size);
      const Eigen::MatrixXd ours = matrix_exponential(a);
      const Eigen::MatrixXd theirs = a.exp();
      EXPECT_LE((ours - theirs).norm(), 1e-11 * theirs.norm()) << size << " " << scale;
    }
  }
}

TEST(MatrixExponential, ZeroAndDiagonal) {
  EXPECT_TRUE(matrix_exponential(Eigen::MatrixXd::Zero(4, 4)).isIdentity(0.0));
  Eigen::VectorXd d(3);
  d << -2.0, 0.5, 3.0;
  const Eigen::MatrixXd e = matrix_exponential(d.asDiagonal().toDenseMatrix());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e(i, i), std::exp(d(i)), 1e-13 * std::exp(d(i)));
}

TEST(Assemble, ZeroDriftIsDiagonalDiffusion) {
  const double ell = 1.5;
  const double mu = 0.3;
  const auto basis = basis_of(ell, 4);
  const auto op = assemble_linearized(frozen(VectorField(basis->layout())), basis, mu);
  const auto a = op.matrix_at(0.2);
  const double kappa2 = std::pow(two_pi / ell, 2);
  for (std::size_t i = 0; i < op.dimension(); ++i) {
    const auto& e = basis->solenoidal()[i];
    for (std::size_t j = 0; j < op.dimension(); ++j)
      EXPECT_NEAR(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), i == j ? mu * e.m * kappa2 : 0.0, 1e-12);
  }
}

TEST(Assemble, ConstantDriftIsPureTransport) {
  const auto basis = basis_of(two_pi, 2);
  VectorField w(basis->layout());
  w.set({0, 0, 0}, {0.7, -0.2, 1.1});
  const auto op = assemble_linearized(frozen(w), basis, 0.1);
  const auto entries = basis->solenoidal();
  for (std::size_t row = 0; row < entries.size(); ++row) {
    const auto v = basis->field(entries[row]);
    for (std::size_t col = 0; col < entries.size(); ++col) {
      const auto vp = basis->field(entries[col]);
      VectorField transport(basis->layout());
      transport.axpy(0.7, partial(vp, 0));
      transport.axpy(-0.2, partial(vp, 1));
      transport.axpy(1.1, partial(vp, 2));
      EXPECT_NEAR(op.transport[0](static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)), inner_l2(transport, v),
                  1e-12);
    }
  }
}

TEST(Assemble, TransportTermIsAntisymmetric) {
  std::mt19937_64 rng(2);
  const auto basis = basis_of(two_pi, 3);
  const auto w = random_solenoidal(basis->layout(), rng, 0.2);
  const auto entries = basis->solenoidal();
  for (std::size_t a = 0; a < entries.size(); a += 5)
    for (std::size_t b = 0; b < entries.size(); b += 3) {
      const auto v = basis->field(entries[a]);
      const auto vp = basis->field(entries[b]);
      EXPECT_NEAR(inner_l2(convect(w, vp), v), -inner_l2(convect(w, v), vp), 1e-11);
    }
  const auto op = assemble_linearized(frozen(w), basis, 0.1);
  EXPECT_LE(op.form_discrepancy, 1e-11 * (1.0 + op.transport[0].cwiseAbs().maxCoeff()));
}

TEST(Assemble, RejectsNonSolenoidalDrift) {
  std::mt19937_64 rng(3);
  const auto basis = basis_of(two_pi, 2);
  const auto w = random_vector_field(basis->layout(), rng, 0.1);
  EXPECT_THROW(assemble_linearized(frozen(w), basis, 0.1), InvalidArgument);
}

TEST(SolveLinearized, SingleEigenmodeDecays) {
  const double ell = two_pi;
  const double mu = 0.1;
  const auto basis = basis_of(ell, 3);
  const auto op = assemble_linearized(frozen(VectorField(basis->layout())), basis, mu);
  const std::size_t pick = 3 + 17;
  const auto& e = basis->solenoidal()[pick];
  auto config = config_for(basis->layout(), 1.0, 1e-3);
  config.mu = mu;
  const auto sol = solve_linearized(op, Forcing::zero(basis->layout()), basis->field(e), config);
  const double expected = std::exp(-mu * e.m * 1.0);
  const auto& last = sol.coefficients.back();
  for (Eigen::Index i = 0; i < last.size(); ++i)
    EXPECT_NEAR(last(i), static_cast<std::size_t>(i) == pick ? expected : 0.0, 1e-9);
}

TEST(SolveLinearized, ConstantForcingSteadyPlusTransient) {
  std::mt19937_64 rng(4);
  const double mu = 0.2;
  const auto basis = basis_of(2.0, 3);
  const auto& layout = basis->layout();
  auto f = random_solenoidal(layout, rng, 0.1);
  f.set({0, 0, 0}, {0.0, 0.0, 0.0});
  const auto u0 = random_solenoidal(layout, rng, 0.1);
  const auto op = assemble_linearized(frozen(VectorField(layout)), basis, mu);
  auto config = config_for(layout, 1.0, 1e-3);
  config.mu = mu;
  const auto sol = solve_linearized(op, Forcing::steady(f), u0, config);
  // per mode: c(t) = f/lambda + (c0 - f/lambda) e^{-lambda t}
  const auto fc = project_coefficients(f, *basis);
  const auto c0 = project_coefficients(u0, *basis);
  for (std::size_t i = 3; i < fc.size(); ++i) {
    const double lambda = op.diffusion(static_cast<Eigen::Index>(i));
    const double expected = fc[i] / lambda + (c0[i] - fc[i] / lambda) * std::exp(-lambda);
    EXPECT_NEAR(sol.coefficients.back()(static_cast<Eigen::Index>(i)), expected, 1e-8);
  }
}

TEST(SolveLinearized, AutonomousDriftMatchesMatrixExponential) {
  std::mt19937_64 rng(5);
  const auto basis = basis_of(two_pi, 4);
  const auto& layout = basis->layout();
  const auto w = random_solenoidal(layout, rng, 0.3);
  const auto u0 = random_solenoidal(layout, rng, 0.3);
  const auto f = random_solenoidal(layout, rng, 0.3);
  const auto op = assemble_linearized(frozen(w), basis, 0.1);
  const auto config = config_for(layout, 0.5, 1e-3);
  const auto sol = solve_linearized(op, Forcing::steady(f), u0, config);
  const Eigen::MatrixXd a = op.matrix_at(0.0);
  const Eigen::VectorXd c0 = as_vector(project_coefficients(u0, *basis));
  const Eigen::VectorXd fc = as_vector(project_coefficients(f, *basis));
  const auto closed = linearized_closed_form(a, fc, c0, 0.5);
  EXPECT_LE((sol.coefficients.back() - closed).cwiseAbs().maxCoeff(), 1e-8);
  // independent oracle: c = e^{-At} c0 + int_0^t e^{-As} f ds by fine Simpson quadrature
  const int n = 400;
  const Eigen::MatrixXd step = Eigen::MatrixXd(-a * (0.5 / n)).exp();
  Eigen::VectorXd integral = Eigen::VectorXd::Zero(fc.size());
  Eigen::VectorXd term = fc;  // e^{-A s_i} f
  for (int i = 0; i <= n; ++i) {
    const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += weight * term;
    term = step * term;
  }
  integral *= 0.5 / n / 3.0;
  const Eigen::VectorXd oracle = Eigen::MatrixXd(-a * 0.5).exp() * c0 + integral;
  EXPECT_LE((closed - oracle).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SolveLinearized, ImexEulerIsFirstOrder) {
  std::mt19937_64 rng(6);
  const auto basis = basis_of(two_pi, 2);
  const auto& layout = basis->layout();
  const auto w = random_solenoidal(layout, rng, 0.3);
  const auto u0 = random_solenoidal(layout, rng, 0.3);
  const auto op = assemble_linearized(frozen(w), basis, 0.1);
  const auto closed = linearized_closed_form(op.matrix_at(0.0), Eigen::VectorXd::Zero(u0.layout().size() == 0 ? 0 : static_cast<Eigen::Index>(op.dimension())),
                                             as_vector(project_coefficients(u0, *basis)), 0.5);
  std::vector<double> dts, errors;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const auto sol = solve_linearized(op, Forcing::zero(layout), u0, config_for(layout, 0.5, dt, Scheme::imex_euler));
    dts.push_back(dt);
    errors.push_back((sol.coefficients.back() - closed).cwiseAbs().maxCoeff());
    EXPECT_LE(errors.back(), sol.error_estimate);
  }
  EXPECT_NEAR(fitted_order(dts, errors), 1.0, 0.1);
}

TEST(SolveLinearized, RejectsNonSolenoidalInitialDatumAndLooseSteps) {
  std::mt19937_64 rng(7);
  const auto basis = basis_of(two_pi, 2);
  const auto& layout = basis->layout();
  const auto op = assemble_linearized(frozen(random_solenoidal(layout, rng, 0.3)), basis, 0.1);
  EXPECT_THROW(solve_linearized(op, Forcing::zero(layout), random_vector_field(layout, rng, 0.1), config_for(layout, 0.5, 1e-2)),
               InvalidArgument);
  auto config = config_for(layout, 0.5, 1e-1, Scheme::imex_euler);
  config.error_tolerance = 1e-12;
  EXPECT_THROW(solve_linearized(op, Forcing::zero(layout), random_solenoidal(layout, rng, 0.1), config), SolverAbort);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt = 2.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SolverConfig{};
  c.mu = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SolverConfig{};
  c.grid = 4;  // cutoff 4 has K = 2 and needs n >= 7
  EXPECT_THROW(c.validate(), Undersampled);
  c = SolverConfig{};
  c.T = 1.0;
  c.dt = 0.3;
  EXPECT_EQ(c.steps(), 4);
  EXPECT_DOUBLE_EQ(c.effective_dt(), 0.25);
  EXPECT_EQ(parse_scheme("imex_euler"), Scheme::imex_euler);
  EXPECT_THROW(parse_scheme("rk45"), InvalidArgument);
}

TEST(NavierStokes, ZeroDataStaysZero) {
  const SpectralLayout layout(two_pi, 4);
  const auto run = solve_navier_stokes(Forcing::zero(layout), VectorField(layout), config_for(layout, 0.1, 1e-2));
  for (const auto& u : run.trajectory.fields) EXPECT_EQ(u.max_abs_coeff(), 0.0);
}

TEST(NavierStokes, ShearModeDecaysExactly) {
  const SpectralLayout layout(two_pi, 4);
  const double a = 1.7;
  const auto u0 = shear_mode(layout, a);
  const auto run = solve_navier_stokes(Forcing::zero(layout), u0, config_for(layout, 1.0, 1e-3));
  const auto& traj = run.trajectory;
  EXPECT_EQ(max_diff(traj.fields.front(), u0), 0.0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  auto exact = u0;
  exact *= std::exp(-0.1);
  EXPECT_LE(l2_norm_exact(traj.fields.back() - exact), 1e-6);
  EXPECT_FALSE(run.cfl_advisory);
}

TEST(NavierStokes, TrajectoriesStayDivergenceFreeAndConsistent) {
  std::mt19937_64 rng(8);
  const SpectralLayout layout(two_pi, 6);
  const auto u0 = random_solenoidal(layout, rng, 0.3);
  auto f = random_vector_field(layout, rng, 0.3);
  const auto run = solve_navier_stokes(Forcing::steady(f), u0, config_for(layout, 0.2, 1e-3));
  const auto& traj = run.trajectory;
  ASSERT_TRUE(traj.has_rhs());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& u = traj.fields[i];
    EXPECT_LE(l2_norm_exact(div(u)), 1e-12 * l2_norm_exact(u));
    // stored rhs re-evaluated from the projected system
    const auto again = evolution_rhs(u, f, 0.1);
    EXPECT_LE(max_diff(again, traj.rhs[i]), 1e-13 * (1.0 + again.max_abs_coeff()));
  }
}

TEST(NavierStokes, ManufacturedSolutionConvergesAtSchemeOrder) {
  const SpectralLayout layout(two_pi, 4);
  const ManufacturedSolution ms(layout, {});
  const auto f = ms.forcing();
  for (auto [scheme, minimum] : {std::pair{Scheme::if_rk4, 3.5}, std::pair{Scheme::imex_euler, 0.9}}) {
    std::vector<double> dts, errors;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
      auto config = config_for(layout, 1.0, dt, scheme);
      const auto run = solve_navier_stokes(f, ms.exact(0.0), config);
      double worst = 0.0;
      for (std::size_t i = 0; i < run.trajectory.size(); ++i)
        worst = std::max(worst, l2_norm_exact(run.trajectory.fields[i] - ms.exact(run.trajectory.times[i])));
      dts.push_back(dt);
      errors.push_back(worst);
    }
    EXPECT_GE(fitted_order(dts, errors), minimum) << to_string(scheme);
  }
}

TEST(NavierStokes, StepHalvingEstimateBoundsError) {
  const SpectralLayout layout(two_pi, 4);
  const ManufacturedSolution ms(layout, {});
  for (auto scheme : {Scheme::if_rk4, Scheme::imex_euler}) {
    const auto est = solve_with_error_estimate(ms.forcing(), ms.exact(0.0), config_for(layout, 0.5, 4e-3, scheme));
    double worst = 0.0;
    const auto& traj = est.run.trajectory;
    for (std::size_t i = 0; i < traj.size(); ++i)
      worst = std::max(worst, l2_norm_exact(traj.fields[i] - ms.exact(traj.times[i])));
    EXPECT_LE(worst, est.error_estimate) << to_string(scheme);
    EXPECT_GE(worst, 0.2 * est.error_estimate) << to_string(scheme);
  }
}

TEST(NavierStokes, RejectsNonSolenoidalInitialDatum) {
  std::mt19937_64 rng(9);
  const SpectralLayout layout(two_pi, 4);
  EXPECT_THROW(solve_navier_stokes(Forcing::zero(layout), random_vector_field(layout, rng, 0.1), config_for(layout, 0.1, 1e-2)),
               InvalidArgument);
}

TEST(NavierStokes, BlowUpAborts) {
  const SpectralLayout layout(two_pi, 4);
  auto config = config_for(layout, 50.0, 0.5);
  config.mu = 1e-4;
  std::mt19937_64 rng(10);
  const auto u0 = 100.0 * random_solenoidal(layout, rng, 0.0);
  try {
    solve_navier_stokes(Forcing::zero(layout), u0, config);
    FAIL() << "expected SolverAbort";
  } catch (const SolverAbort& e) {
    EXPECT_NE(std::string(e.what()).find("blow-up suspected at t"), std::string::npos);
  }
}

TEST(NavierStokes, CflAdvisory) {
  const SpectralLayout layout(two_pi, 4);
  auto config = config_for(layout, 0.05, 0.05);
  const auto run = solve_navier_stokes(Forcing::zero(layout), taylor_green(layout, 10.0), config);
  EXPECT_TRUE(run.cfl_advisory);
  EXPECT_GT(run.max_cfl, 0.5);
}

TEST(Residual, ExactShearSolutionFromFiniteDifferences) {
  const SpectralLayout layout(two_pi, 4);
  const auto u0 = shear_mode(layout, 1.0);
  FieldTrajectory traj;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 1e-3 * i;
    auto u = u0;
    u *= std::exp(-0.1 * t);
    traj.times.push_back(t);
    traj.fields.push_back(u);
  }
  const auto f = Forcing::zero(layout);
  const auto res = residual(traj, recover_pressure_series(traj, f), f, 0.1);
  for (double r : res) EXPECT_LE(r, 1e-8);
}

TEST(Residual, ZeroEverything) {
  const SpectralLayout layout(two_pi, 2);
  FieldTrajectory traj;
  traj.times = {0.0, 0.5, 1.0};
  traj.fields.assign(3, VectorField(layout));
  const auto f = Forcing::zero(layout);
  for (double r : residual(traj, recover_pressure_series(traj, f), f, 0.1)) EXPECT_EQ(r, 0.0);
}

TEST(Residual, ManufacturedSolverOutput) {
  const SpectralLayout layout(two_pi, 4);
  const ManufacturedSolution ms(layout, {});
  const auto f = ms.forcing();
  const auto run = solve_navier_stokes(f, ms.exact(0.0), config_for(layout, 0.2, 1e-3));
  const auto res = residual(run.trajectory, recover_pressure_series(run.trajectory, f), f, 0.1);
  for (double r : res) EXPECT_LE(r, 1e-10);
  // finite differences of the exact fields are second-order consistent
  std::vector<double> at_middle;
  for (double h : {2e-3, 1e-3}) {
    FieldTrajectory exact;
    for (int i = 0; i <= 2; ++i) {
      exact.times.push_back(0.1 + (i - 1) * h);
      exact.fields.push_back(ms.exact(exact.times.back()));
    }
    at_middle.push_back(residual(exact, recover_pressure_series(exact, f), f, 0.1)[1]);
  }
  EXPECT_NEAR(at_middle[0] / at_middle[1], 4.0, 0.2);
}

TEST(EnergyIdentity, ShearRunDefect) {
  const SpectralLayout layout(two_pi, 4);
  const auto run = solve_navier_stokes(Forcing::zero(layout), shear_mode(layout, 1.0), config_for(layout, 1.0, 1e-3));
  for (double d : energy_identity_defect(run.trajectory, Forcing::zero(layout), 0.1)) EXPECT_LE(std::abs(d), 1e-6);
}

TEST(Forcing, SampledInterpolationAndDepth) {
  const SpectralLayout layout(two_pi, 1);
  VectorField a(layout), b(layout);
  a.set({1, 0, 0}, {0.0, 1.0, 0.0});
  b.set({1, 0, 0}, {0.0, 3.0, 0.0});
  FieldTrajectory samples;
  samples.times = {0.0, 2.0};
  samples.fields = {a, b};
  const auto f = Forcing::sampled(samples);
  EXPECT_NEAR(f.at(0.5).coeff({1, 0, 0})[1].real(), 1.5, 1e-15);
  EXPECT_NEAR(f.derivative(0.5, 1).coeff({1, 0, 0})[1].real(), 1.0, 1e-15);
  EXPECT_EQ(f.derivative_depth(), 1);
  EXPECT_THROW(f.derivative(0.5, 2), InvalidArgument);
  EXPECT_EQ(Forcing::steady(a).derivative(1.0, 3).max_abs_coeff(), 0.0);
}
