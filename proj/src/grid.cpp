#include "torus/grid.hpp"

#include <cmath>
#include <limits>

#include "torus/error.hpp"
#include "torus/fft.hpp"

namespace torus {

SampledGrid synthesize(const ScalarField& u, int n) {
  const auto& transform = GridTransform::get(n);
  return SampledGrid{u.layout().ell(), n, transform.to_grid(u)};
}

std::array<SampledGrid, 3> synthesize(const VectorField& u, int n) {
  const auto& transform = GridTransform::get(n);
  std::array<SampledGrid, 3> out;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = SampledGrid{u.layout().ell(), n, transform.to_grid(u[i])};
  return out;
}

ScalarField analyze(const SampledGrid& grid, int cutoff) {
  const auto& transform = GridTransform::get(grid.n);
  return transform.from_grid(grid.values, SpectralLayout(grid.ell, cutoff));
}

SampledGrid magnitude(const std::array<SampledGrid, 3>& c) {
  SampledGrid out{c[0].ell, c[0].n, std::vector<double>(c[0].values.size())};
  const auto count = static_cast<std::ptrdiff_t>(out.values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double a = c[0].values[i], b = c[1].values[i], d = c[2].values[i];
    out.values[i] = std::sqrt(a * a + b * b + d * d);
  }
  return out;
}

double lp_norm(const SampledGrid& grid, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("L^p norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : grid.values) m = std::max(m, std::abs(v));
    return m;
  }
  // Per-plane partial sums, combined serially in plane order.
  const int n = grid.n;
  const std::size_t plane = static_cast<std::size_t>(n) * n;
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (int j1 = 0; j1 < n; ++j1) {
    double s = 0.0;
    const double* v = grid.values.data() + j1 * plane;
    if (p == 2.0) {
      for (std::size_t i = 0; i < plane; ++i) s += v[i] * v[i];
    } else {
      for (std::size_t i = 0; i < plane; ++i) s += std::pow(std::abs(v[i]), p);
    }
    partial[static_cast<std::size_t>(j1)] = s;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return std::pow(sum * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const ScalarField& u, double p, int n) {
  if (!(p >= 1.0)) throw InvalidArgument("L^p norm requires p >= 1");
  return lp_norm(synthesize(u, n), p);
}

double lp_norm(const VectorField& u, double p, int n) {
  if (!(p >= 1.0)) throw InvalidArgument("L^p norm requires p >= 1");
  return lp_norm(magnitude(synthesize(u, n)), p);
}

}  // namespace torus
