#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace torus {

enum class Scheme { imex_euler, if_rk4 };

Scheme parse_scheme(std::string_view name);
std::string to_string(Scheme scheme);
/// Temporal order of accuracy: 1 for IMEX Euler, 4 for integrating-factor RK4.
int order_of(Scheme scheme);

struct SolverConfig {
  double mu = 0.1;
  double T = 1.0;
  double ell = 2.0 * std::numbers::pi;
  int cutoff = 4;
  double dt = 1e-3;
  Scheme scheme = Scheme::if_rk4;
  /// Product grid; 0 picks the smallest alias-free power of two.
  int grid = 0;
  /// Store every n-th step in the output trajectory (the final step is always stored).
  int store_every = 1;
  /// Step-halving error estimates above this value reject the run.
  std::optional<double> error_tolerance;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
  /// Number of steps and the step actually used (T / steps).
  int steps() const;
  double effective_dt() const;
};

}  // namespace torus
