#pragma once

#include <vector>

#include "torus/field.hpp"
#include "torus/forcing.hpp"
#include "torus/solver_config.hpp"
#include "torus/trajectory.hpp"

namespace torus {

struct NavierStokesRun {
  FieldTrajectory trajectory;  // rhs samples hold d/dt u
  double max_cfl = 0.0;        // max of ||u||_inf dt (2pi/ell) K over stored samples
  bool cfl_advisory = false;   // max_cfl > 0.5
};

/// d/dt u = mu Delta u + P(f - D u) on the truncated space.
VectorField evolution_rhs(const VectorField& u, const VectorField& f, double mu, int grid = 0);

/// Integrates the truncated Navier-Stokes system from u0 (which must be divergence-free).
/// Diffusion is treated exactly by the integrating factor exp(-mu (k,k)(2pi/ell)^2 dt) for IF_RK4
/// and implicitly for IMEX_EULER; the projected nonlinearity is explicit. Throws SolverAbort
/// ("blow-up suspected at t = ...") on non-finite or exploding states.
NavierStokesRun solve_navier_stokes(const Forcing& f, const VectorField& u0, const SolverConfig& config);

struct StepHalvingResult {
  NavierStokesRun run;       // at the configured dt
  double error_estimate = 0; // max over common times of the estimated L2 error of run
};

/// Runs at dt and dt/2; the estimate is 2 * 2^p/(2^p - 1) * max_t ||u_dt - u_{dt/2}||_{L2}.
/// Throws SolverAbort if config.error_tolerance is set and exceeded.
StepHalvingResult solve_with_error_estimate(const Forcing& f, const VectorField& u0, const SolverConfig& config);

/// Zero-mean pressure per sample, grad p = (I - P)(f - D u).
std::vector<ScalarField> recover_pressure_series(const FieldTrajectory& traj, const Forcing& f, int grid = 0);

/// ||d/dt u - mu Delta u + D u + grad p - f||_{L2} per sample. d/dt u comes from the rhs samples
/// when present, otherwise from finite differences of the fields.
std::vector<double> residual(const FieldTrajectory& traj, const std::vector<ScalarField>& pressure, const Forcing& f,
                             double mu, int grid = 0);

/// 1/2||u(t)||^2 + mu int_0^t ||grad u||^2 - 1/2||u_0||^2 - int_0^t (f,u), trapezoid in time.
std::vector<double> energy_identity_defect(const FieldTrajectory& traj, const Forcing& f, double mu);

}  // namespace torus
