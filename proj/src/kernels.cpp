#include "torus/kernels.hpp"

#include <sstream>
#include <vector>

#include "torus/error.hpp"
#include "torus/fft.hpp"
#include "torus/operators.hpp"

namespace torus {

namespace {

int checked_grid(const SpectralLayout& layout, int n) {
  if (n == 0) return dealias_grid_size(layout);
  require_valid_grid(n);
  if (n < 3 * layout.bandwidth() + 1) {
    std::ostringstream msg;
    msg << "undersampled: product grid " << n << " aliases bandwidth " << layout.bandwidth() << " (need "
        << 3 * layout.bandwidth() + 1 << ")";
    throw Undersampled(msg.str());
  }
  return n;
}

std::vector<std::vector<double>> to_grids(const std::vector<ScalarField>& fields, const GridTransform& transform) {
  std::vector<std::vector<double>> out(fields.size());
  const auto count = static_cast<std::ptrdiff_t>(fields.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = transform.to_grid(fields[static_cast<std::size_t>(i)]);
  return out;
}

// Appends w_0..w_2 then d_j u_i at slot 3 + 3 i + j.
void push_transport_operands(const VectorField& w, const VectorField& u, std::vector<ScalarField>& fields) {
  for (int j = 0; j < 3; ++j) fields.push_back(w[j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) fields.push_back(partial(u[i], j));
}

// product_i += sum_j w_j d_j u_i, operands at grids[base..base+12).
void accumulate_transport(const std::vector<std::vector<double>>& grids, std::size_t base,
                          std::array<std::vector<double>, 3>& product) {
  const auto points = static_cast<std::ptrdiff_t>(product[0].size());
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& w0 = grids[base];
    const auto& w1 = grids[base + 1];
    const auto& w2 = grids[base + 2];
    const auto& d0 = grids[base + 3 + 3 * i];
    const auto& d1 = grids[base + 4 + 3 * i];
    const auto& d2 = grids[base + 5 + 3 * i];
    auto& out = product[i];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t x = 0; x < points; ++x) out[x] += w0[x] * d0[x] + w1[x] * d1[x] + w2[x] * d2[x];
  }
}

VectorField from_grids(std::array<std::vector<double>, 3>& product, const GridTransform& transform,
                       const SpectralLayout& layout) {
  std::array<ScalarField, 3> parts{ScalarField(layout), ScalarField(layout), ScalarField(layout)};
#pragma omp parallel for schedule(static)
  for (int i = 0; i < 3; ++i) parts[static_cast<std::size_t>(i)] = transform.from_grid(product[static_cast<std::size_t>(i)], layout);
  return VectorField(std::move(parts[0]), std::move(parts[1]), std::move(parts[2]));
}

}  // namespace

VectorField convect(const VectorField& w, const VectorField& u, int n) {
  require_same_layout(w.layout(), u.layout());
  const auto& transform = GridTransform::get(checked_grid(u.layout(), n));
  std::vector<ScalarField> operands;
  operands.reserve(12);
  push_transport_operands(w, u, operands);
  const auto grids = to_grids(operands, transform);
  std::array<std::vector<double>, 3> product;
  for (auto& p : product) p.assign(transform.points(), 0.0);
  accumulate_transport(grids, 0, product);
  return from_grids(product, transform, u.layout());
}

VectorField nonlinear_D(const VectorField& u, int n) { return convect(u, u, n); }

VectorField bilinear_B(const VectorField& w, const VectorField& u, int n) {
  require_same_layout(w.layout(), u.layout());
  const auto& transform = GridTransform::get(checked_grid(u.layout(), n));
  std::vector<ScalarField> operands;
  operands.reserve(24);
  push_transport_operands(w, u, operands);
  push_transport_operands(u, w, operands);
  const auto grids = to_grids(operands, transform);
  std::array<std::vector<double>, 3> product;
  for (auto& p : product) p.assign(transform.points(), 0.0);
  accumulate_transport(grids, 0, product);
  accumulate_transport(grids, 12, product);
  return from_grids(product, transform, u.layout());
}

}  // namespace torus
