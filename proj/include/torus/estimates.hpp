#pragma once

#include <array>
#include <string>
#include <vector>

#include "torus/field.hpp"
#include "torus/forcing.hpp"
#include "torus/trajectory.hpp"

namespace torus {

// Time suprema are maxima over stored samples; time integrals are trapezoid sums.
// ||grad^i u||_{L2} below means ||(-Delta)^{i/2} u||_{L2}.

/// ||u||_{L^p(I, L2)}; p = infinity gives the maximum over samples.
double time_lp_norm(const FieldTrajectory& traj, double p);

/// ||grad^i v||^2_{C(I,L2)} + mu ||grad^{i+1} v||^2_{L2(I,L2)} for a sampled series v.
double seminorm_squared(const std::vector<double>& times, const std::vector<VectorField>& series, int i, double mu);

struct EnergyCertificate {
  double lhs2 = 0.0;    // ||u||^2_{C(I,L2)} + mu ||grad u||^2_{L2(I,L2)}
  double rhs2 = 0.0;    // ||u0||^2 + (2/mu) ||f||^2_{L2(I,V1')} + ||f||^2_{L1(I,V1')}
  double factor = 0.0;  // 1 + 2 sqrt2 e^{W/mu} + (4/mu) W e^{2W/mu}, W = int ||w||_inf^2
  double ratio = 0.0;   // lhs2 / rhs2 (0 when both vanish)
  bool pass = false;    // lhs2 <= factor * rhs2
  bool strict_pass = false;  // lhs2 <= rhs2, reported only
  double drift_integral = 0.0;
};

/// Evaluates both sides of the basic energy estimate for a trajectory. The drift trajectory,
/// when given, supplies ||w||_inf by grid maximum on an n^3 grid (n = 0: alias-free default).
EnergyCertificate energy_certificate(const FieldTrajectory& traj, const Forcing& f, const VectorField& u0, double mu,
                                     const FieldTrajectory* drift = nullptr, int grid = 0);

/// 2/s + 3/r = 1 with 2 <= s < inf and 3 < r <= inf.
bool lps_admissible(double s, double r);

struct LpsReport {
  double s = 0.0;
  double r = 0.0;
  bool admissible = false;
  double value = 0.0;  // ||u||_{L^s(I, L^r)}
};

LpsReport lps_norm(const FieldTrajectory& traj, double s, double r, int grid);
/// Running value (int_0^{t_i} ||u||_{L^r}^s)^{1/s} per sample.
std::vector<double> lps_partial(const FieldTrajectory& traj, double s, double r, int grid);

/// Time derivatives d^j/dt^j u for j = 0..order at every sample, obtained by differentiating the
/// evolution equation d/dt u = mu Delta u + P(f - D u) with the Leibniz rule. j = 1 uses stored
/// rhs samples when present. Throws InvalidArgument if the forcing lacks order-1 derivatives.
std::vector<std::vector<VectorField>> time_derivatives(const FieldTrajectory& traj, int order, double mu,
                                                       const Forcing& f, int grid = 0);

struct BochnerScaleNorm {
  int k = 0;
  int s = 0;
  double value = 0.0;
};

/// (sum_{i<=k} sum_{|alpha|+2j<=2s} ||d_x^alpha d_t^j u||^2_{i,mu,T})^{1/2}.
BochnerScaleNorm bochner_scale_norm(const FieldTrajectory& traj, int k, int s, double mu, const Forcing& f,
                                    int grid = 0);

/// max over |alpha| = j of ||d^alpha u||_{L^p} on an n^3 grid.
double max_partial_lp_norm(const VectorField& u, int j, double p, int grid);

struct GnExponents {
  int j0 = 0;
  int k0 = 1;
  double p0 = 2.0;
  double q0 = 2.0;
  double r0 = 2.0;
  double s0 = 2.0;
  double a = 0.0;
};

/// Empty when the exponents satisfy the interpolation condition, otherwise the reason.
std::string gn_inadmissibility(const GnExponents& e);

struct GnReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// lhs = ||grad^{j0} u||_{L^p0}, rhs = c1 ||grad^{k0} u||^a_{L^r0} ||u||^{1-a}_{L^q0} + c2 ||u||_{L^s0}.
/// Diagnostic only: the inequality's constants are not known.
GnReport gn_report(const VectorField& u, const GnExponents& e, double c1, double c2, int grid);

struct NonlinearTermReport {
  double lhs = 0.0;  // ||(-Delta)^{k/2} D u||^2
  // eps ||grad^{k+2} u||^2, ||u||^s_{L^r} ||grad^{k+1} u||^2, ||u||^2 ||u||^2_{L^r}, ||u||^2
  std::array<double, 4> terms{};
  /// lhs / sum(terms): the smallest common constant making the bound hold for this field.
  double fitted_constant = 0.0;
};

NonlinearTermReport nonlinear_term_bound_report(const VectorField& u, int k, double s, double r, double eps, int grid);

}  // namespace torus
