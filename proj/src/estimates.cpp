#include "torus/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "torus/error.hpp"
#include "torus/fft.hpp"
#include "torus/grid.hpp"
#include "torus/helmholtz.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"

namespace torus {

namespace {

void require_samples(const FieldTrajectory& traj, std::size_t at_least) {
  traj.validate();
  if (traj.size() < at_least) throw InvalidArgument("trajectory has too few samples");
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<std::array<int, 3>> multi_indices(int order) {
  std::vector<std::array<int, 3>> out;
  for (int a = order; a >= 0; --a)
    for (int b = order - a; b >= 0; --b) out.push_back({a, b, order - a - b});
  return out;
}

}  // namespace

double time_lp_norm(const FieldTrajectory& traj, double p) {
  require_samples(traj, 1);
  if (!(p >= 1.0)) throw InvalidArgument("time exponent p must be >= 1");
  std::vector<double> norms;
  for (const auto& u : traj.fields) norms.push_back(l2_norm_exact(u));
  if (std::isinf(p)) return *std::max_element(norms.begin(), norms.end());
  for (auto& n : norms) n = std::pow(n, p);
  return std::pow(trapezoid(traj.times, norms), 1.0 / p);
}

double seminorm_squared(const std::vector<double>& times, const std::vector<VectorField>& series, int i, double mu) {
  if (times.size() != series.size() || times.empty()) throw InvalidArgument("series does not match time grid");
  double sup = 0.0;
  std::vector<double> dissipation;
  for (const auto& v : series) {
    const double a = gradient_seminorm(v, i);
    const double b = gradient_seminorm(v, i + 1);
    sup = std::max(sup, a * a);
    dissipation.push_back(b * b);
  }
  return sup + mu * trapezoid(times, dissipation);
}

EnergyCertificate energy_certificate(const FieldTrajectory& traj, const Forcing& f, const VectorField& u0, double mu,
                                     const FieldTrajectory* drift, int grid) {
  require_samples(traj, 1);
  if (!(mu > 0.0)) throw InvalidArgument("viscosity mu must be positive");
  EnergyCertificate c;
  c.lhs2 = seminorm_squared(traj.times, traj.fields, 0, mu);

  std::vector<double> dual, dual2;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double d = f.is_zero() ? 0.0 : dual_norm(f.at(traj.times[i]), 1);
    dual.push_back(d);
    dual2.push_back(d * d);
  }
  const double l1 = trapezoid(traj.times, dual);
  const double u0n = l2_norm_exact(u0);
  c.rhs2 = u0n * u0n + (2.0 / mu) * trapezoid(traj.times, dual2) + l1 * l1;

  if (drift != nullptr) {
    require_samples(*drift, 1);
    const int n = grid == 0 ? dealias_grid_size(drift->layout()) : grid;
    std::vector<double> sup2;
    for (const auto& w : drift->fields) {
      const double s = lp_norm(w, std::numeric_limits<double>::infinity(), n);
      sup2.push_back(s * s);
    }
    c.drift_integral = drift->size() > 1 ? trapezoid(drift->times, sup2) : sup2.front() * traj.horizon();
  }
  const double w = c.drift_integral;
  c.factor = 1.0 + 2.0 * std::sqrt(2.0) * std::exp(w / mu) + (4.0 / mu) * w * std::exp(2.0 * w / mu);
  c.ratio = c.rhs2 > 0.0 ? c.lhs2 / c.rhs2 : (c.lhs2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  c.pass = c.lhs2 <= c.factor * c.rhs2;
  c.strict_pass = c.lhs2 <= c.rhs2;
  return c;
}

bool lps_admissible(double s, double r) {
  if (!(s >= 2.0) || std::isinf(s)) return false;
  if (!(r > 3.0)) return false;
  const double lhs = 2.0 / s + (std::isinf(r) ? 0.0 : 3.0 / r);
  return std::abs(lhs - 1.0) <= 1e-12;
}

namespace {

std::vector<double> spatial_lr(const FieldTrajectory& traj, double r, int grid) {
  const int n = grid == 0 ? dealias_grid_size(traj.layout()) : grid;
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& u : traj.fields) out.push_back(lp_norm(u, r, n));
  return out;
}

void require_lps_exponents(double s, double r) {
  if (!(s >= 1.0)) throw InvalidArgument("time exponent s must be >= 1");
  if (!(r > 1.0)) throw InvalidArgument("space exponent r must lie in (1, inf]");
}

}  // namespace

LpsReport lps_norm(const FieldTrajectory& traj, double s, double r, int grid) {
  require_samples(traj, 1);
  require_lps_exponents(s, r);
  LpsReport rep{s, r, lps_admissible(s, r), 0.0};
  auto norms = spatial_lr(traj, r, grid);
  if (std::isinf(s)) {
    rep.value = *std::max_element(norms.begin(), norms.end());
  } else {
    for (auto& v : norms) v = std::pow(v, s);
    rep.value = std::pow(trapezoid(traj.times, norms), 1.0 / s);
  }
  return rep;
}

std::vector<double> lps_partial(const FieldTrajectory& traj, double s, double r, int grid) {
  require_samples(traj, 1);
  require_lps_exponents(s, r);
  auto norms = spatial_lr(traj, r, grid);
  if (std::isinf(s)) {
    for (std::size_t i = 1; i < norms.size(); ++i) norms[i] = std::max(norms[i], norms[i - 1]);
    return norms;
  }
  for (auto& v : norms) v = std::pow(v, s);
  auto cum = cumulative_trapezoid(traj.times, norms);
  for (auto& v : cum) v = std::pow(v, 1.0 / s);
  return cum;
}

std::vector<std::vector<VectorField>> time_derivatives(const FieldTrajectory& traj, int order, double mu,
                                                       const Forcing& f, int grid) {
  require_samples(traj, 1);
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (order >= 1 && order - 1 > f.derivative_depth())
    throw InvalidArgument("requested time-derivative order exceeds the available forcing derivatives");
  const auto& layout = traj.layout();
  std::vector<std::vector<VectorField>> out(static_cast<std::size_t>(order) + 1);
  out[0] = traj.fields;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    for (int j = 0; j < order; ++j) {
      // u^{(j+1)} = mu Delta u^{(j)} + P(f^{(j)} - sum_l C(j,l) (u^{(l)} . grad) u^{(j-l)})
      if (j == 0 && traj.has_rhs()) {
        out[1].push_back(traj.rhs[i]);
        continue;
      }
      VectorField source = f.derivative(t, j).resampled(layout);
      for (int l = 0; l <= j; ++l)
        source.axpy(-binomial(j, l), convect(out[static_cast<std::size_t>(l)][i], out[static_cast<std::size_t>(j - l)][i], grid));
      VectorField next = leray_project(source);
      next.axpy(mu, laplacian(out[static_cast<std::size_t>(j)][i]));
      out[static_cast<std::size_t>(j) + 1].push_back(std::move(next));
    }
  }
  return out;
}

BochnerScaleNorm bochner_scale_norm(const FieldTrajectory& traj, int k, int s, double mu, const Forcing& f, int grid) {
  if (k < 0 || s < 0) throw InvalidArgument("Bochner indices k, s must be nonnegative");
  const auto derivs = time_derivatives(traj, s, mu, f, grid);
  double total = 0.0;
  for (int j = 0; j <= s; ++j) {
    for (int order = 0; order + 2 * j <= 2 * s; ++order) {
      for (const auto& alpha : multi_indices(order)) {
        std::vector<VectorField> series;
        series.reserve(traj.size());
        for (const auto& v : derivs[static_cast<std::size_t>(j)]) series.push_back(order == 0 ? v : partial(v, alpha));
        for (int i = 0; i <= k; ++i) total += seminorm_squared(traj.times, series, i, mu);
      }
    }
  }
  return {k, s, std::sqrt(total)};
}

double max_partial_lp_norm(const VectorField& u, int j, double p, int grid) {
  if (j < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (j == 0) return lp_norm(u, p, grid);
  double out = 0.0;
  for (const auto& alpha : multi_indices(j)) out = std::max(out, lp_norm(partial(u, alpha), p, grid));
  return out;
}

std::string gn_inadmissibility(const GnExponents& e) {
  if (e.j0 < 0 || e.k0 < 0) return "derivative orders must be nonnegative";
  if (!(e.p0 >= 1.0 && e.q0 >= 1.0 && e.r0 >= 1.0)) return "Lebesgue exponents must be >= 1";
  if (!(e.s0 >= 1.0)) return "s0 must be >= 1";
  if (!(e.a >= 0.0 && e.a <= 1.0)) return "a must lie in [0, 1]";
  if (e.k0 == 0 ? e.j0 > 0 : static_cast<double>(e.j0) / e.k0 > e.a + 1e-12) return "j0/k0 must not exceed a";
  auto inv = [](double p) { return std::isinf(p) ? 0.0 : 1.0 / p; };
  const double rhs = e.j0 / 3.0 + e.a * (inv(e.r0) - e.k0 / 3.0) + (1.0 - e.a) * inv(e.q0);
  if (std::abs(inv(e.p0) - rhs) > 1e-12) return "1/p0 does not match the interpolation identity";
  return {};
}

GnReport gn_report(const VectorField& u, const GnExponents& e, double c1, double c2, int grid) {
  if (const auto why = gn_inadmissibility(e); !why.empty()) throw InvalidArgument("inadmissible exponents: " + why);
  GnReport r;
  r.lhs = max_partial_lp_norm(u, e.j0, e.p0, grid);
  const double top = max_partial_lp_norm(u, e.k0, e.r0, grid);
  const double base = lp_norm(u, e.q0, grid);
  r.rhs = c1 * std::pow(top, e.a) * std::pow(base, 1.0 - e.a) + c2 * lp_norm(u, e.s0, grid);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

NonlinearTermReport nonlinear_term_bound_report(const VectorField& u, int k, double s, double r, double eps, int grid) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const int n = grid == 0 ? dealias_grid_size(u.layout()) : grid;
  NonlinearTermReport rep;
  const double lhs = gradient_seminorm(nonlinear_D(u, n), k);
  rep.lhs = lhs * lhs;
  const double l2 = l2_norm_exact(u);
  const double lr = lp_norm(u, r, n);
  const double g1 = gradient_seminorm(u, k + 1);
  const double g2 = gradient_seminorm(u, k + 2);
  rep.terms = {eps * g2 * g2, std::pow(lr, s) * g1 * g1, l2 * l2 * lr * lr, l2 * l2};
  const double sum = rep.terms[0] + rep.terms[1] + rep.terms[2] + rep.terms[3];
  rep.fitted_constant = sum > 0.0 ? rep.lhs / sum : 0.0;
  return rep;
}

}  // namespace torus
