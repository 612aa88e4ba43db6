#pragma once

#include <compare>
#include <cstdlib>

namespace torus {

/// Integer mode index k in Z^3 of the Fourier basis exp(i (k,x) 2pi/ell).
struct WaveVector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  /// Shell value (k,k); zero only for k = 0.
  constexpr int shell() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  constexpr int operator[](int axis) const { return axis == 0 ? k1 : (axis == 1 ? k2 : k3); }
  constexpr WaveVector operator-() const { return {-k1, -k2, -k3}; }
  constexpr WaveVector operator+(const WaveVector& o) const { return {k1 + o.k1, k2 + o.k2, k3 + o.k3}; }
  constexpr WaveVector operator-(const WaveVector& o) const { return {k1 - o.k1, k2 - o.k2, k3 - o.k3}; }
  constexpr bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
  constexpr int max_abs() const {
    int a = std::abs(k1), b = std::abs(k2), c = std::abs(k3);
    return a > b ? (a > c ? a : c) : (b > c ? b : c);
  }

  /// True for the representative of the pair {k, -k}: first nonzero component positive.
  constexpr bool is_pair_representative() const {
    if (k1 != 0) return k1 > 0;
    if (k2 != 0) return k2 > 0;
    return k3 > 0;
  }

  constexpr auto operator<=>(const WaveVector&) const = default;
};

}  // namespace torus
