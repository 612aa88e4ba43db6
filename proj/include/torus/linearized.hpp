#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "torus/eigenbasis.hpp"
#include "torus/forcing.hpp"
#include "torus/solver_config.hpp"
#include "torus/trajectory.hpp"

namespace torus {

/// Galerkin matrices A_M(t) = mu m (2pi/ell)^2 delta + W(t) on the divergence-free basis
/// (constants first), where W(t)[row v, col v'] = (w . grad v', v) + (v' . grad w, v).
struct LinearizedOperator {
  std::shared_ptr<const DivFreeBasis> basis;
  double mu = 0.0;
  std::vector<double> times;
  Eigen::VectorXd diffusion;               // mu m (2pi/ell)^2 per basis element
  std::vector<Eigen::MatrixXd> transport;  // W(t_i)
  /// max |W_form1 - W_form2| over all entries and samples, where the second form is
  /// (w . grad v', v) - (w, v' . grad v) evaluated by grid quadrature.
  double form_discrepancy = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(diffusion.size()); }
  bool autonomous() const { return transport.size() == 1; }
  /// A(t) with W interpolated linearly between samples.
  Eigen::MatrixXd matrix_at(double t) const;
  Eigen::MatrixXd transport_at(double t) const;
};

/// Assembles A_M over the drift samples. Throws InvalidArgument if some sample of w is not
/// divergence-free, or if the two expressions of W disagree beyond roundoff.
LinearizedOperator assemble_linearized(const FieldTrajectory& drift, std::shared_ptr<const DivFreeBasis> basis,
                                       double mu, int grid = 0);

struct LinearizedSolution {
  FieldTrajectory trajectory;
  std::vector<Eigen::VectorXd> coefficients;
  /// Step-halving estimate of the max-in-time coefficient error.
  double error_estimate = 0.0;
};

/// Integrates dc/dt + A_M(t) c = f_M(t), c(0) = coordinates of u0, with the configured scheme
/// (diffusion exact for IF_RK4, implicit for IMEX_EULER). u0 must be divergence-free.
LinearizedSolution solve_linearized(const LinearizedOperator& op, const Forcing& f, const VectorField& u0,
                                    const SolverConfig& config);

/// Closed form for time-independent A and f: c(t) = exp(-A t) c0 + int_0^t exp(-A (t-s)) f ds,
/// evaluated through one matrix exponential of the augmented matrix [[-A, f], [0, 0]] t.
Eigen::VectorXd linearized_closed_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& f, const Eigen::VectorXd& c0,
                                       double t);

}  // namespace torus
