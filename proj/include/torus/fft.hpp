#pragma once

#include <span>
#include <vector>

#include "torus/field.hpp"

namespace torus {

/// Uniform-grid synthesis/analysis between truncated coefficients and n^3 real samples at
/// x_j = j ell / n. Instances are cached per n and safe to use from several threads.
class GridTransform {
 public:
  static const GridTransform& get(int n);

  int n() const { return n_; }
  std::size_t points() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  /// Samples sum_k c_k exp(i (k,x) 2pi/ell); requires n >= 2K+1.
  std::vector<double> to_grid(const ScalarField& u) const;
  /// Rectangle-rule coefficients restricted to the given truncation, Hermitian-symmetrized.
  ScalarField from_grid(std::span<const double> samples, const SpectralLayout& layout) const;

  ~GridTransform();
  GridTransform(const GridTransform&) = delete;
  GridTransform& operator=(const GridTransform&) = delete;

 private:
  explicit GridTransform(int n);

  int n_;
  void* forward_;
  void* backward_;
};

bool is_power_of_two(int n);
/// Throws InvalidArgument unless n is a power of two >= 4.
void require_valid_grid(int n);
/// Smallest admissible grid with n >= 2K+1 (exact synthesis).
int minimal_grid_size(const SpectralLayout& layout);
/// Smallest admissible grid with n >= 3K+1 (alias-free truncated products).
int dealias_grid_size(const SpectralLayout& layout);

}  // namespace torus
