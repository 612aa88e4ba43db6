#include "torus/problems.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "torus/helmholtz.hpp"
#include "torus/kernels.hpp"
#include "torus/operators.hpp"

namespace torus {

VectorField shear_mode(const SpectralLayout& layout, double amplitude) {
  VectorField u(layout);
  // sin(kappa x1) = (e^{i kappa x1} - e^{-i kappa x1}) / 2i
  u.set({1, 0, 0}, {Complex{}, Complex(0.0, -0.5 * amplitude), Complex{}});
  return u;
}

VectorField taylor_green(const SpectralLayout& layout, double amplitude) {
  VectorField u(layout);
  const Complex quarter_sin(0.0, -amplitude / 8.0);  // 1/(8i)
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const WaveVector k{s1, s2, s3};
        if (!k.is_pair_representative()) continue;
        u.set(k, {static_cast<double>(s1) * quarter_sin, -static_cast<double>(s2) * quarter_sin, Complex{}});
      }
  return u;
}

ScalarField random_scalar_field(const SpectralLayout& layout, std::mt19937_64& rng, double decay) {
  std::normal_distribution<double> normal;
  ScalarField u(layout);
  for (const auto& k : layout.modes()) {
    if (!k.is_zero() && !k.is_pair_representative()) continue;
    const double scale = std::exp(-decay * k.shell());
    const double re = normal(rng);
    const double im = normal(rng);
    u.set(k, scale * Complex(re, k.is_zero() ? 0.0 : im));
  }
  return u;
}

VectorField random_vector_field(const SpectralLayout& layout, std::mt19937_64& rng, double decay) {
  auto x = random_scalar_field(layout, rng, decay);
  auto y = random_scalar_field(layout, rng, decay);
  auto z = random_scalar_field(layout, rng, decay);
  return VectorField(std::move(x), std::move(y), std::move(z));
}

VectorField random_solenoidal(const SpectralLayout& layout, std::mt19937_64& rng, double decay) {
  return leray_project(random_vector_field(layout, rng, decay));
}

ManufacturedSolution::ManufacturedSolution(SpectralLayout layout, Params params) : layout_(layout), params_(params) {
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int a = 0; a < terms; ++a) {
    b_[static_cast<std::size_t>(a)] = 0.3 + 0.4 * unit(rng);
    omega_[static_cast<std::size_t>(a)] = params.omega * (0.5 + unit(rng));
    phi_[static_cast<std::size_t>(a)] = 2.0 * std::numbers::pi * unit(rng);
    VectorField u = random_solenoidal(layout, rng, params.decay);
    u *= params.amplitude / std::max(l2_norm_exact(u), 1e-300) * std::sqrt(layout.volume());
    laplacians_.push_back(laplacian(u));
    shapes_.push_back(std::move(u));
  }
  for (int a = 0; a < terms; ++a)
    for (int b = 0; b < terms; ++b)
      products_.push_back(convect(shapes_[static_cast<std::size_t>(a)], shapes_[static_cast<std::size_t>(b)]));
}

double ManufacturedSolution::g(int a, double t, int order) const {
  const auto i = static_cast<std::size_t>(a);
  const double w = omega_[i];
  const double value = b_[i] * std::pow(w, order) * std::sin(w * t + phi_[i] + order * std::numbers::pi / 2.0);
  return order == 0 ? 1.0 + value : value;
}

VectorField ManufacturedSolution::exact(double t) const {
  VectorField u(layout_);
  for (int a = 0; a < terms; ++a) u.axpy(g(a, t, 0), shapes_[static_cast<std::size_t>(a)]);
  return u;
}

VectorField ManufacturedSolution::forcing_derivative(double t, int order) const {
  VectorField f(layout_);
  for (int a = 0; a < terms; ++a) {
    f.axpy(g(a, t, order + 1), shapes_[static_cast<std::size_t>(a)]);
    f.axpy(-params_.mu * g(a, t, order), laplacians_[static_cast<std::size_t>(a)]);
  }
  for (int a = 0; a < terms; ++a)
    for (int b = 0; b < terms; ++b) {
      // (g_a g_b)^{(order)} by the Leibniz rule
      double coeff = 0.0;
      double binom = 1.0;
      for (int l = 0; l <= order; ++l) {
        coeff += binom * g(a, t, l) * g(b, t, order - l);
        binom = binom * (order - l) / (l + 1);
      }
      f.axpy(coeff, products_[static_cast<std::size_t>(a * terms + b)]);
    }
  return f;
}

Forcing ManufacturedSolution::forcing() const {
  auto self = std::make_shared<const ManufacturedSolution>(*this);
  std::vector<Forcing::Function> derivs;
  for (int order = 0; order <= 3; ++order)
    derivs.push_back([self, order](double t) { return self->forcing_derivative(t, order); });
  return Forcing::analytic(layout_, std::move(derivs));
}

}  // namespace torus
