#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "torus/field.hpp"

namespace torus {

/// All k in Z^3 with (k,k) = m, closed under negation.
struct Shell {
  int m = 0;
  std::vector<WaveVector> wave_vectors;
};

/// Nonempty shells 1 <= m <= max_shell in ascending order; empty for max_shell = 0.
std::vector<Shell> enumerate_shells(int max_shell);

enum class BasisKind { constant, solenoidal, gradient };

/// A real field supported on {k, -k}: c_k = amplitude, c_{-k} = conj(amplitude).
/// Constants use k = 0 and a real amplitude.
struct BasisElement {
  BasisKind kind = BasisKind::solenoidal;
  int m = 0;
  int j = 0;  // 1-based index within its shell and kind
  WaveVector k;
  std::array<Complex, 3> amplitude{};
};

/// L2(Q)-orthonormal real eigenfields of the Laplacian through shell M: normalized constants,
/// divergence-free fields v_{m,j} (two polarizations orthogonal to k, cos and sin each) and
/// curl-free fields w_{m,k} (amplitude along k, cos and sin), ordered by (m, pair, polarization).
class DivFreeBasis {
 public:
  static DivFreeBasis build(double ell, int max_shell);

  const SpectralLayout& layout() const { return layout_; }
  /// e_1, e_2, e_3 scaled to unit L2 norm.
  std::span<const BasisElement> constants() const { return std::span(solenoidal_).first(3); }
  /// v_{m,j} for m >= 1.
  std::span<const BasisElement> entries() const { return std::span(solenoidal_).subspan(3); }
  /// Constants followed by v_{m,j}: the coordinate order of the Galerkin system.
  std::span<const BasisElement> solenoidal() const { return solenoidal_; }
  std::span<const BasisElement> gradient_entries() const { return gradient_; }
  std::size_t dimension() const { return solenoidal_.size(); }

  VectorField field(const BasisElement& e) const;
  /// -Delta eigenvalue m (2pi/ell)^2.
  double eigenvalue(const BasisElement& e) const;

 private:
  DivFreeBasis(SpectralLayout layout, std::vector<BasisElement> solenoidal, std::vector<BasisElement> gradient);

  SpectralLayout layout_;
  std::vector<BasisElement> solenoidal_;
  std::vector<BasisElement> gradient_;
};

/// (u, e)_{L2} for a basis element.
double inner_with(const VectorField& u, const BasisElement& e, double ell);

/// Coordinates of u along basis.solenoidal(); u.cutoff must not exceed the basis cutoff.
std::vector<double> project_coefficients(const VectorField& u, const DivFreeBasis& basis);
/// Coordinates of u along basis.gradient_entries().
std::vector<double> gradient_coefficients(const VectorField& u, const DivFreeBasis& basis);
VectorField reconstruct(std::span<const double> coefficients, const DivFreeBasis& basis);
VectorField reconstruct_gradient(std::span<const double> coefficients, const DivFreeBasis& basis);

/// Basis dump: per field an index line "BASIS m j" (divergence-free and constants, m = 0) or
/// "BASIS_GRAD m k" (curl-free), followed by a TORUSFIELD block.
void write_basis(std::ostream& out, const DivFreeBasis& basis);

struct LabeledField {
  BasisKind kind;
  int m;
  int j;
  VectorField field;
};
std::vector<LabeledField> read_basis_dump(std::istream& in);

}  // namespace torus
