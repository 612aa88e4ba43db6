#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "torus/wave_vector.hpp"

namespace torus {

using Complex = std::complex<double>;

/// Truncation of the Fourier series on the torus of side ell: admits every k with
/// (k,k) <= cutoff. Coefficients live in a dense cube [-K,K]^3 with K = floor(sqrt(cutoff));
/// cube entries outside the shell ball are kept at zero.
class SpectralLayout {
 public:
  SpectralLayout(double ell, int cutoff);

  double ell() const { return ell_; }
  int cutoff() const { return cutoff_; }
  int bandwidth() const { return bandwidth_; }
  int side() const { return 2 * bandwidth_ + 1; }
  std::size_t size() const {
    const auto s = static_cast<std::size_t>(side());
    return s * s * s;
  }
  /// 2 pi / ell.
  double wavenumber() const;
  double volume() const { return ell_ * ell_ * ell_; }

  bool admits(const WaveVector& k) const { return k.shell() <= cutoff_; }
  std::size_t index(const WaveVector& k) const {
    const auto s = static_cast<std::size_t>(side());
    return (static_cast<std::size_t>(k.k1 + bandwidth_) * s + static_cast<std::size_t>(k.k2 + bandwidth_)) * s +
           static_cast<std::size_t>(k.k3 + bandwidth_);
  }
  WaveVector wave_vector(std::size_t index) const;

  /// Every admitted wave vector in cube order.
  std::vector<WaveVector> modes() const;

  bool operator==(const SpectralLayout& o) const { return ell_ == o.ell_ && cutoff_ == o.cutoff_; }

 private:
  double ell_;
  int cutoff_;
  int bandwidth_;
};

/// Real-valued periodic function stored by its Fourier coefficients
/// c_k = ell^-3 \int_Q u exp(-i (k,x) 2pi/ell) dx. Hermitian symmetry c_{-k} = conj(c_k)
/// is maintained by every mutator.
class ScalarField {
 public:
  explicit ScalarField(SpectralLayout layout);

  const SpectralLayout& layout() const { return layout_; }

  /// Zero for modes outside the truncation.
  Complex coeff(const WaveVector& k) const;
  /// Sets c_k and c_{-k} = conj(c_k). For k = 0 the imaginary part is dropped.
  void set(const WaveVector& k, Complex value);
  void add(const WaveVector& k, Complex value);

  std::span<const Complex> data() const { return coeffs_; }
  /// Raw access for kernels; callers must keep Hermitian symmetry and zeros outside the ball.
  std::span<Complex> mutable_data() { return coeffs_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  ScalarField& axpy(double a, const ScalarField& x);

  /// Projects the stored coefficients onto the Hermitian-symmetric subspace.
  void symmetrize();
  /// Re-expresses the field on another truncation (padding or dropping modes).
  ScalarField resampled(const SpectralLayout& target) const;

  double max_abs_coeff() const;

 private:
  SpectralLayout layout_;
  std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

class VectorField {
 public:
  explicit VectorField(SpectralLayout layout);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  const SpectralLayout& layout() const { return components_[0].layout(); }
  ScalarField& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
  const ScalarField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

  std::array<Complex, 3> coeff(const WaveVector& k) const;
  void set(const WaveVector& k, const std::array<Complex, 3>& value);

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);
  VectorField& axpy(double a, const VectorField& x);

  VectorField resampled(const SpectralLayout& target) const;
  double max_abs_coeff() const;

 private:
  std::array<ScalarField, 3> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Throws IncompatibleFields unless both layouts share ell.
void require_same_domain(const SpectralLayout& a, const SpectralLayout& b);
/// Throws IncompatibleFields unless both layouts share ell and cutoff.
void require_same_layout(const SpectralLayout& a, const SpectralLayout& b);

}  // namespace torus
