#include "torus/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "torus/error.hpp"

namespace torus {

namespace {

int isqrt(int m) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return r;
}

}  // namespace

SpectralLayout::SpectralLayout(double ell, int cutoff) : ell_(ell), cutoff_(cutoff), bandwidth_(0) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw InvalidArgument("period ell must be positive and finite");
  if (cutoff < 0) throw InvalidArgument("cutoff must be nonnegative");
  bandwidth_ = isqrt(cutoff);
}

double SpectralLayout::wavenumber() const { return 2.0 * std::numbers::pi / ell_; }

WaveVector SpectralLayout::wave_vector(std::size_t index) const {
  const auto s = static_cast<std::size_t>(side());
  const int k3 = static_cast<int>(index % s) - bandwidth_;
  const int k2 = static_cast<int>((index / s) % s) - bandwidth_;
  const int k1 = static_cast<int>(index / (s * s)) - bandwidth_;
  return {k1, k2, k3};
}

std::vector<WaveVector> SpectralLayout::modes() const {
  std::vector<WaveVector> out;
  for (int a = -bandwidth_; a <= bandwidth_; ++a)
    for (int b = -bandwidth_; b <= bandwidth_; ++b)
      for (int c = -bandwidth_; c <= bandwidth_; ++c) {
        const WaveVector k{a, b, c};
        if (admits(k)) out.push_back(k);
      }
  return out;
}

void require_same_domain(const SpectralLayout& a, const SpectralLayout& b) {
  if (a.ell() != b.ell()) {
    std::ostringstream msg;
    msg << "incompatible domains: ell " << a.ell() << " vs " << b.ell();
    throw IncompatibleFields(msg.str());
  }
}

void require_same_layout(const SpectralLayout& a, const SpectralLayout& b) {
  require_same_domain(a, b);
  if (a.cutoff() != b.cutoff()) {
    std::ostringstream msg;
    msg << "incompatible truncations: cutoff " << a.cutoff() << " vs " << b.cutoff();
    throw IncompatibleFields(msg.str());
  }
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(SpectralLayout layout) : layout_(layout), coeffs_(layout.size(), Complex{}) {}

Complex ScalarField::coeff(const WaveVector& k) const {
  if (!layout_.admits(k)) return {};
  return coeffs_[layout_.index(k)];
}

void ScalarField::set(const WaveVector& k, Complex value) {
  if (!layout_.admits(k)) {
    std::ostringstream msg;
    msg << "mode (" << k.k1 << "," << k.k2 << "," << k.k3 << ") outside cutoff " << layout_.cutoff();
    throw InvalidArgument(msg.str());
  }
  if (k.is_zero()) {
    coeffs_[layout_.index(k)] = Complex(value.real(), 0.0);
    return;
  }
  coeffs_[layout_.index(k)] = value;
  coeffs_[layout_.index(-k)] = std::conj(value);
}

void ScalarField::add(const WaveVector& k, Complex value) { set(k, coeff(k) + value); }

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_layout(layout_, o.layout_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_layout(layout_, o.layout_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& x) {
  require_same_layout(layout_, x.layout_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
  return *this;
}

void ScalarField::symmetrize() {
  const int kb = layout_.bandwidth();
  for (int a = -kb; a <= kb; ++a)
    for (int b = -kb; b <= kb; ++b)
      for (int c = -kb; c <= kb; ++c) {
        const WaveVector k{a, b, c};
        auto& ck = coeffs_[layout_.index(k)];
        if (!layout_.admits(k)) {
          ck = {};
          continue;
        }
        if (k.is_zero()) {
          ck = Complex(ck.real(), 0.0);
        } else if (k.is_pair_representative()) {
          auto& cm = coeffs_[layout_.index(-k)];
          const Complex avg = 0.5 * (ck + std::conj(cm));
          ck = avg;
          cm = std::conj(avg);
        }
      }
}

ScalarField ScalarField::resampled(const SpectralLayout& target) const {
  require_same_domain(layout_, target);
  ScalarField out(target);
  const int kb = std::min(layout_.bandwidth(), target.bandwidth());
  for (int a = -kb; a <= kb; ++a)
    for (int b = -kb; b <= kb; ++b)
      for (int c = -kb; c <= kb; ++c) {
        const WaveVector k{a, b, c};
        if (layout_.admits(k) && target.admits(k)) out.coeffs_[target.index(k)] = coeffs_[layout_.index(k)];
      }
  return out;
}

double ScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

// ---------------------------------------------------------------------------

VectorField::VectorField(SpectralLayout layout)
    : components_{ScalarField(layout), ScalarField(layout), ScalarField(layout)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : components_{std::move(x), std::move(y), std::move(z)} {
  require_same_layout(components_[0].layout(), components_[1].layout());
  require_same_layout(components_[0].layout(), components_[2].layout());
}

std::array<Complex, 3> VectorField::coeff(const WaveVector& k) const {
  return {components_[0].coeff(k), components_[1].coeff(k), components_[2].coeff(k)};
}

void VectorField::set(const WaveVector& k, const std::array<Complex, 3>& value) {
  for (int i = 0; i < 3; ++i) (*this)[i].set(k, value[static_cast<std::size_t>(i)]);
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  for (auto& c : components_) c *= a;
  return *this;
}

VectorField& VectorField::axpy(double a, const VectorField& x) {
  for (int i = 0; i < 3; ++i) (*this)[i].axpy(a, x[i]);
  return *this;
}

VectorField VectorField::resampled(const SpectralLayout& target) const {
  return VectorField(components_[0].resampled(target), components_[1].resampled(target),
                     components_[2].resampled(target));
}

double VectorField::max_abs_coeff() const {
  return std::max({components_[0].max_abs_coeff(), components_[1].max_abs_coeff(), components_[2].max_abs_coeff()});
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

}  // namespace torus
