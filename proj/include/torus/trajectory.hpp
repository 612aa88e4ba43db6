#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "torus/field.hpp"

namespace torus {

/// Time samples t_0 = 0 < ... < t_N = T of a vector field, optionally with samples of d/dt u.
struct FieldTrajectory {
  std::vector<double> times;
  std::vector<VectorField> fields;
  std::vector<VectorField> rhs;  // empty, or one d/dt u sample per time

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  bool has_rhs() const { return !rhs.empty(); }
  const SpectralLayout& layout() const;
  double horizon() const { return times.empty() ? 0.0 : times.back() - times.front(); }

  /// Piecewise-linear interpolation in time (constant outside the sampled interval).
  VectorField interpolate(double t) const;
  /// Throws unless times increase strictly and all samples share one layout.
  void validate() const;
  /// Every stride-th sample (the last sample is always kept).
  FieldTrajectory thinned(std::size_t stride) const;
};

/// "TRAJ 1 <ell> <cutoff> <N>", then per sample "STEP <i> <t>" + TORUSFIELD block and, when rhs
/// samples are present, "RHS <i>" + TORUSFIELD block.
void write_trajectory(std::ostream& out, const FieldTrajectory& traj);
FieldTrajectory read_trajectory(std::istream& in);
FieldTrajectory read_trajectory_file(const std::string& path);

/// Trapezoid rule over samples.
double trapezoid(std::span<const double> t, std::span<const double> values);
/// Running trapezoid integral, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> values);

}  // namespace torus
