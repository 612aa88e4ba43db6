#include "torus/navier_stokes.hpp"

#include <cmath>
#include <sstream>

#include "torus/error.hpp"
#include "torus/fft.hpp"
#include "torus/grid.hpp"
#include "torus/helmholtz.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"

namespace torus {

Scheme parse_scheme(std::string_view name) {
  if (name == "imex_euler" || name == "IMEX_EULER") return Scheme::imex_euler;
  if (name == "if_rk4" || name == "IF_RK4") return Scheme::if_rk4;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "' (expected imex_euler or if_rk4)");
}

std::string to_string(Scheme scheme) { return scheme == Scheme::imex_euler ? "imex_euler" : "if_rk4"; }

int order_of(Scheme scheme) { return scheme == Scheme::imex_euler ? 1 : 4; }

void SolverConfig::validate() const {
  if (!(mu > 0.0)) throw InvalidArgument("viscosity mu must be positive");
  if (!(T > 0.0)) throw InvalidArgument("horizon T must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("time step dt must be positive");
  if (dt > T * (1.0 + 1e-12)) throw InvalidArgument("time step dt must not exceed T");
  if (!(ell > 0.0)) throw InvalidArgument("period ell must be positive");
  if (cutoff < 1) throw InvalidArgument("cutoff M must be >= 1");
  if (store_every < 1) throw InvalidArgument("store_every must be >= 1");
  if (grid != 0) {
    require_valid_grid(grid);
    const SpectralLayout layout(ell, cutoff);
    if (grid < 3 * layout.bandwidth() + 1) throw Undersampled("product grid too coarse for alias-free products");
  }
}

int SolverConfig::steps() const { return std::max(1, static_cast<int>(std::ceil(T / dt - 1e-9))); }

double SolverConfig::effective_dt() const { return T / steps(); }

VectorField evolution_rhs(const VectorField& u, const VectorField& f, double mu, int grid) {
  VectorField out = leray_project(f - nonlinear_D(u, grid));
  out.axpy(mu, laplacian(u));
  return out;
}

namespace {

// Per-mode scalar multiplier applied to all three components.
VectorField scale_modes(const VectorField& u, const std::vector<double>& factor) {
  VectorField out = u;
  for (int i = 0; i < 3; ++i) {
    auto d = out[i].mutable_data();
    for (std::size_t n = 0; n < d.size(); ++n) d[n] *= factor[n];
  }
  return out;
}

std::vector<double> mode_factors(const SpectralLayout& layout, double mu, double h, bool implicit) {
  const double kappa2 = layout.wavenumber() * layout.wavenumber();
  std::vector<double> out(layout.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double lambda = mu * kappa2 * layout.wave_vector(n).shell();
    out[n] = implicit ? 1.0 / (1.0 + h * lambda) : std::exp(-lambda * h);
  }
  return out;
}

void require_divergence_free(const VectorField& u) {
  const double d = l2_norm_exact(div(u));
  const double scale = std::max(1.0, sobolev_norm(u, 1.0) * u.layout().wavenumber() * std::sqrt(u.layout().volume()));
  if (d > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "initial field is not divergence-free (||div u0|| = " << d << ")";
    throw InvalidArgument(msg.str());
  }
}

// Second-order weights for d/dt at sample i from the nearest three samples (two when only two exist).
std::vector<std::pair<std::size_t, double>> difference_weights(const std::vector<double>& t, std::size_t i) {
  if (t.size() == 2) {
    const double inv = 1.0 / (t[1] - t[0]);
    return {{0, -inv}, {1, inv}};
  }
  const std::size_t first = i == 0 ? 0 : (i + 1 == t.size() ? i - 2 : i - 1);
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t a = first; a < first + 3; ++a) {
    // derivative of the Lagrange basis polynomial of node a at t[i]
    double num = 0.0, den = 1.0;
    for (std::size_t b = first; b < first + 3; ++b) {
      if (b == a) continue;
      den *= t[a] - t[b];
      double term = 1.0;
      for (std::size_t c = first; c < first + 3; ++c)
        if (c != a && c != b) term *= t[i] - t[c];
      num += term;
    }
    out.emplace_back(a, num / den);
  }
  return out;
}

void check_finite(const VectorField& u, double t) {
  bool finite = true;
  for (int c = 0; c < 3 && finite; ++c)
    for (const auto& z : u[c].data())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e100) {
        finite = false;
        break;
      }
  if (!finite) {
    std::ostringstream msg;
    msg << "blow-up suspected at t = " << t;
    throw SolverAbort(msg.str());
  }
}

}  // namespace

NavierStokesRun solve_navier_stokes(const Forcing& f, const VectorField& u0, const SolverConfig& config) {
  config.validate();
  const SpectralLayout layout(config.ell, config.cutoff);
  require_same_domain(u0.layout(), layout);
  require_divergence_free(u0);
  const int grid = config.grid == 0 ? dealias_grid_size(layout) : config.grid;
  const int steps = config.steps();
  const double h = config.effective_dt();
  const double mu = config.mu;

  auto force = [&](double t) { return f.at(t).resampled(layout); };
  auto nonlinear = [&](const VectorField& u, double t) { return leray_project(force(t) - nonlinear_D(u, grid)); };

  NavierStokesRun run;
  const double cfl_scale = h * layout.wavenumber() * layout.bandwidth();
  auto store = [&](double t, const VectorField& u) {
    VectorField rhs = evolution_rhs(u, force(t), mu, grid);
    run.trajectory.times.push_back(t);
    run.trajectory.fields.push_back(u);
    run.trajectory.rhs.push_back(std::move(rhs));
    const double cfl = lp_norm(u, std::numeric_limits<double>::infinity(), minimal_grid_size(layout)) * cfl_scale;
    run.max_cfl = std::max(run.max_cfl, cfl);
  };

  VectorField u = leray_project(u0.resampled(layout));
  store(0.0, u);

  if (config.scheme == Scheme::if_rk4) {
    const auto full = mode_factors(layout, mu, h, false);
    const auto half = mode_factors(layout, mu, 0.5 * h, false);
    for (int n = 0; n < steps; ++n) {
      const double t = n * h;
      const VectorField k1 = nonlinear(u, t);
      VectorField stage = u;
      stage.axpy(0.5 * h, k1);
      const VectorField k2 = nonlinear(scale_modes(stage, half), t + 0.5 * h);
      stage = scale_modes(u, half);
      stage.axpy(0.5 * h, k2);
      const VectorField k3 = nonlinear(stage, t + 0.5 * h);
      stage = scale_modes(u, full);
      stage.axpy(h, scale_modes(k3, half));
      const VectorField k4 = nonlinear(stage, t + h);

      VectorField next = scale_modes(u, full);
      next.axpy(h / 6.0, scale_modes(k1, full));
      VectorField mid = k2;
      mid += k3;
      next.axpy(h / 3.0, scale_modes(mid, half));
      next.axpy(h / 6.0, k4);
      u = std::move(next);
      check_finite(u, t + h);
      if ((n + 1) % config.store_every == 0 || n + 1 == steps) store((n + 1) * h, u);
    }
  } else {
    const auto implicit = mode_factors(layout, mu, h, true);
    for (int n = 0; n < steps; ++n) {
      const double t = n * h;
      VectorField next = u;
      next.axpy(h, nonlinear(u, t));
      u = scale_modes(next, implicit);
      check_finite(u, t + h);
      if ((n + 1) % config.store_every == 0 || n + 1 == steps) store((n + 1) * h, u);
    }
  }
  run.cfl_advisory = run.max_cfl > 0.5;
  return run;
}

StepHalvingResult solve_with_error_estimate(const Forcing& f, const VectorField& u0, const SolverConfig& config) {
  StepHalvingResult result{solve_navier_stokes(f, u0, config), 0.0};
  SolverConfig fine_config = config;
  fine_config.dt = config.effective_dt() / 2.0;
  fine_config.store_every = config.store_every * 2;
  const auto fine = solve_navier_stokes(f, u0, fine_config);
  const auto& coarse = result.run.trajectory;
  double diff = 0.0;
  for (std::size_t i = 0, j = 0; i < coarse.size(); ++i) {
    while (j < fine.trajectory.size() && fine.trajectory.times[j] < coarse.times[i] - 1e-12) ++j;
    if (j == fine.trajectory.size()) break;
    if (std::abs(fine.trajectory.times[j] - coarse.times[i]) > 1e-9) continue;
    diff = std::max(diff, l2_norm_exact(coarse.fields[i] - fine.trajectory.fields[j]));
  }
  const double amp = std::ldexp(1.0, order_of(config.scheme));
  result.error_estimate = 2.0 * amp / (amp - 1.0) * diff;
  if (config.error_tolerance && result.error_estimate > *config.error_tolerance) {
    std::ostringstream msg;
    msg << "step rejected: error estimate " << result.error_estimate << " exceeds tolerance " << *config.error_tolerance;
    throw SolverAbort(msg.str());
  }
  return result;
}

std::vector<ScalarField> recover_pressure_series(const FieldTrajectory& traj, const Forcing& f, int grid) {
  std::vector<ScalarField> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i)
    out.push_back(recover_pressure(f.at(traj.times[i]).resampled(traj.fields[i].layout()), traj.fields[i], grid));
  return out;
}

std::vector<double> residual(const FieldTrajectory& traj, const std::vector<ScalarField>& pressure, const Forcing& f,
                             double mu, int grid) {
  traj.validate();
  if (pressure.size() != traj.size()) throw InvalidArgument("pressure series does not match trajectory");
  if (!traj.has_rhs() && traj.size() < 2) throw InvalidArgument("residual needs rhs samples or at least two fields");
  std::vector<double> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& u = traj.fields[i];
    VectorField dudt(u.layout());
    if (traj.has_rhs()) {
      dudt = traj.rhs[i];
    } else {
      const auto w = difference_weights(traj.times, i);
      for (std::size_t j = 0; j < w.size(); ++j) dudt.axpy(w[j].second, traj.fields[w[j].first]);
    }
    VectorField r = dudt;
    r.axpy(-mu, laplacian(u));
    r += nonlinear_D(u, grid);
    r += grad(pressure[i]);
    r -= f.at(traj.times[i]).resampled(u.layout());
    out.push_back(l2_norm_exact(r));
  }
  return out;
}

std::vector<double> energy_identity_defect(const FieldTrajectory& traj, const Forcing& f, double mu) {
  traj.validate();
  if (traj.empty()) throw InvalidArgument("energy identity needs a nonempty trajectory");
  std::vector<double> dissipation, work;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& u = traj.fields[i];
    const double g = gradient_seminorm(u, 1);
    dissipation.push_back(mu * g * g);
    work.push_back(inner_l2(f.at(traj.times[i]).resampled(u.layout()), u));
  }
  const auto diss = cumulative_trapezoid(traj.times, dissipation);
  const auto pow = cumulative_trapezoid(traj.times, work);
  const double e0 = 0.5 * std::pow(l2_norm_exact(traj.fields.front()), 2);
  std::vector<double> out;
  for (std::size_t i = 0; i < traj.size(); ++i)
    out.push_back(0.5 * std::pow(l2_norm_exact(traj.fields[i]), 2) + diss[i] - e0 - pow[i]);
  return out;
}

}  // namespace torus
