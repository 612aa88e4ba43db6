#include "torus/helmholtz.hpp"

#include <cmath>

#include "torus/error.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"

namespace torus {

namespace {

// Longitudinal component k (k . c)/(k,k) of each mode, with Hermitian pairs handled together.
VectorField longitudinal(const VectorField& u) {
  const auto& layout = u.layout();
  VectorField out(layout);
  for (const auto& k : layout.modes()) {
    if (k.is_zero() || !k.is_pair_representative()) continue;
    const auto c = u.coeff(k);
    const Complex dot = static_cast<double>(k.k1) * c[0] + static_cast<double>(k.k2) * c[1] +
                        static_cast<double>(k.k3) * c[2];
    const double m = k.shell();
    out.set(k, {dot * (k.k1 / m), dot * (k.k2 / m), dot * (k.k3 / m)});
  }
  return out;
}

}  // namespace

VectorField leray_project(const VectorField& u) { return u - longitudinal(u); }

VectorField gradient_part(const VectorField& u) { return longitudinal(u); }

ScalarField potential_of(const VectorField& g) {
  const auto& layout = g.layout();
  const double kappa = layout.wavenumber();
  ScalarField p(layout);
  for (const auto& k : layout.modes()) {
    if (k.is_zero() || !k.is_pair_representative()) continue;
    const auto c = g.coeff(k);
    const Complex dot = static_cast<double>(k.k1) * c[0] + static_cast<double>(k.k2) * c[1] +
                        static_cast<double>(k.k3) * c[2];
    // grad p = i kappa k p_k; matching the longitudinal part gives p_k = (k . g_k) / (i kappa (k,k)).
    p.set(k, dot / (Complex(0.0, kappa) * static_cast<double>(k.shell())));
  }
  return p;
}

ProjectionDecomposition decompose(const VectorField& u) {
  VectorField g = gradient_part(u);
  ScalarField p = potential_of(g);
  return {u - g, std::move(g), std::move(p)};
}

double commutes_with_derivative_check(const VectorField& u, int axis) {
  if (axis < 0 || axis > 2) throw InvalidArgument("axis must be 0, 1 or 2");
  return l2_norm_exact(partial(leray_project(u), axis) - leray_project(partial(u, axis)));
}

ScalarField recover_pressure(const VectorField& f, const VectorField& u, int grid) {
  require_same_layout(f.layout(), u.layout());
  return potential_of(gradient_part(f - nonlinear_D(u, grid)));
}

double dual_norm(const VectorField& f, int s) {
  if (s < 1) throw InvalidArgument("dual norm order s must be >= 1");
  const auto& layout = f.layout();
  const double kappa2 = layout.wavenumber() * layout.wavenumber();
  const VectorField pf = leray_project(f);
  double sum = 0.0;
  for (const auto& k : layout.modes()) {
    const auto c = pf.coeff(k);
    const double mag2 = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
    if (mag2 == 0.0) continue;
    sum += std::pow(1.0 + kappa2 * k.shell(), -static_cast<double>(s)) * mag2;
  }
  return std::sqrt(layout.volume() * sum);
}

VectorField dual_norm_supremizer(const VectorField& f) {
  const auto& layout = f.layout();
  const double kappa2 = layout.wavenumber() * layout.wavenumber();
  const VectorField pf = leray_project(f);
  VectorField v(layout);
  for (const auto& k : layout.modes()) {
    if (!k.is_zero() && !k.is_pair_representative()) continue;
    const double w = 1.0 / (1.0 + kappa2 * k.shell());
    const auto c = pf.coeff(k);
    v.set(k, {w * c[0], w * c[1], w * c[2]});
  }
  return v;
}

}  // namespace torus
