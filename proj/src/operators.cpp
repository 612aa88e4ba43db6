#include "torus/operators.hpp"

#include <cmath>

#include "torus/error.hpp"

namespace torus {

namespace {

constexpr Complex kI{0.0, 1.0};

// Applies coeff -> mult(k) * coeff over the admitted ball; mult must satisfy
// mult(-k) = conj(mult(k)) so the output stays real.
template <typename Multiplier>
ScalarField apply_multiplier(const ScalarField& u, Multiplier mult) {
  ScalarField out(u.layout());
  const auto& layout = u.layout();
  auto src = u.data();
  auto dst = out.mutable_data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == Complex{}) continue;
    dst[i] = mult(layout.wave_vector(i)) * src[i];
  }
  return out;
}

template <typename Fn>
VectorField componentwise(const VectorField& u, Fn fn) {
  return VectorField(fn(u[0]), fn(u[1]), fn(u[2]));
}

}  // namespace

ScalarField partial(const ScalarField& u, int axis) {
  if (axis < 0 || axis > 2) throw InvalidArgument("axis must be 0, 1 or 2");
  const double kappa = u.layout().wavenumber();
  return apply_multiplier(u, [&](const WaveVector& k) { return kI * kappa * static_cast<double>(k[axis]); });
}

VectorField partial(const VectorField& u, int axis) {
  return componentwise(u, [&](const ScalarField& c) { return partial(c, axis); });
}

ScalarField partial(const ScalarField& u, const std::array<int, 3>& alpha) {
  for (int a : alpha)
    if (a < 0) throw InvalidArgument("multi-index entries must be nonnegative");
  const double kappa = u.layout().wavenumber();
  const int order = alpha[0] + alpha[1] + alpha[2];
  Complex ipow{1.0, 0.0};
  for (int i = 0; i < order; ++i) ipow *= kI;
  return apply_multiplier(u, [&](const WaveVector& k) {
    double m = 1.0;
    for (int axis = 0; axis < 3; ++axis) m *= std::pow(kappa * k[axis], alpha[static_cast<std::size_t>(axis)]);
    return ipow * m;
  });
}

VectorField partial(const VectorField& u, const std::array<int, 3>& alpha) {
  return componentwise(u, [&](const ScalarField& c) { return partial(c, alpha); });
}

VectorField grad(const ScalarField& p) { return VectorField(partial(p, 0), partial(p, 1), partial(p, 2)); }

ScalarField div(const VectorField& u) {
  ScalarField out = partial(u[0], 0);
  out += partial(u[1], 1);
  out += partial(u[2], 2);
  return out;
}

VectorField rot(const VectorField& u) {
  return VectorField(partial(u[2], 1) - partial(u[1], 2), partial(u[0], 2) - partial(u[2], 0),
                     partial(u[1], 0) - partial(u[0], 1));
}

ScalarField laplacian(const ScalarField& u) {
  const double kappa2 = u.layout().wavenumber() * u.layout().wavenumber();
  return apply_multiplier(u, [&](const WaveVector& k) { return Complex(-kappa2 * k.shell(), 0.0); });
}

VectorField laplacian(const VectorField& u) {
  return componentwise(u, [](const ScalarField& c) { return laplacian(c); });
}

ScalarField neg_laplacian_pow(const ScalarField& u, double r) {
  if (r < 0.0 && std::abs(mean(u)) > 0.0) throw InvalidArgument("(-Delta)^r with r < 0 is not invertible on constants");
  const double kappa2 = u.layout().wavenumber() * u.layout().wavenumber();
  return apply_multiplier(u, [&](const WaveVector& k) {
    if (k.is_zero()) return Complex(r == 0.0 ? 1.0 : 0.0, 0.0);
    return Complex(std::pow(kappa2 * k.shell(), r), 0.0);
  });
}

VectorField neg_laplacian_pow(const VectorField& u, double r) {
  return componentwise(u, [&](const ScalarField& c) { return neg_laplacian_pow(c, r); });
}

double sobolev_norm(const ScalarField& u, double s) {
  double sum = 0.0;
  auto data = u.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == Complex{}) continue;
    sum += std::pow(1.0 + u.layout().wave_vector(i).shell(), s) * std::norm(data[i]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const VectorField& u, double s) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double c = sobolev_norm(u[i], s);
    sum += c * c;
  }
  return std::sqrt(sum);
}

double inner_l2(const ScalarField& u, const ScalarField& v) {
  require_same_domain(u.layout(), v.layout());
  double sum = 0.0;
  if (u.layout() == v.layout()) {
    auto a = u.data();
    auto b = v.data();
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] * std::conj(b[i])).real();
  } else {
    for (const auto& k : u.layout().modes()) sum += (u.coeff(k) * std::conj(v.coeff(k))).real();
  }
  return u.layout().volume() * sum;
}

double inner_l2(const VectorField& u, const VectorField& v) {
  return inner_l2(u[0], v[0]) + inner_l2(u[1], v[1]) + inner_l2(u[2], v[2]);
}

double l2_norm_exact(const ScalarField& u) {
  double sum = 0.0;
  for (const auto& c : u.data()) sum += std::norm(c);
  return std::sqrt(u.layout().volume() * sum);
}

double l2_norm_exact(const VectorField& u) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (const auto& c : u[i].data()) sum += std::norm(c);
  return std::sqrt(u.layout().volume() * sum);
}

double gradient_seminorm(const ScalarField& u, int j) {
  if (j < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (j == 0) return l2_norm_exact(u);
  const double kappa2 = u.layout().wavenumber() * u.layout().wavenumber();
  double sum = 0.0;
  auto data = u.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == Complex{}) continue;
    sum += std::pow(kappa2 * u.layout().wave_vector(i).shell(), j) * std::norm(data[i]);
  }
  return std::sqrt(u.layout().volume() * sum);
}

double gradient_seminorm(const VectorField& u, int j) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double c = gradient_seminorm(u[i], j);
    sum += c * c;
  }
  return std::sqrt(sum);
}

double mean(const ScalarField& u) { return u.coeff({0, 0, 0}).real(); }

}  // namespace torus
