#include "torus/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torus/error.hpp"
#include "torus/field_io.hpp"

namespace torus {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(Vec3 a) {
  const double n = std::sqrt(dot(a, a));
  for (auto& x : a) x /= n;
  return a;
}

// Two orthonormal vectors spanning k^perp, by Gram-Schmidt from the unit axis least aligned with k.
std::array<Vec3, 2> polarizations(const WaveVector& k) {
  const Vec3 kv{static_cast<double>(k.k1), static_cast<double>(k.k2), static_cast<double>(k.k3)};
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(k[i]) < std::abs(k[axis])) axis = i;
  Vec3 seed{0.0, 0.0, 0.0};
  seed[static_cast<std::size_t>(axis)] = 1.0;
  const double proj = dot(seed, kv) / dot(kv, kv);
  Vec3 a1{seed[0] - proj * kv[0], seed[1] - proj * kv[1], seed[2] - proj * kv[2]};
  a1 = normalized(a1);
  const Vec3 a2 = cross(normalized(kv), a1);
  return {a1, a2};
}

std::array<Complex, 3> scaled(const Vec3& a, Complex s) { return {s * a[0], s * a[1], s * a[2]}; }

}  // namespace

std::vector<Shell> enumerate_shells(int max_shell) {
  if (max_shell < 0) throw InvalidArgument("shell bound must be nonnegative");
  std::vector<Shell> shells(static_cast<std::size_t>(max_shell) + 1);
  for (std::size_t m = 0; m < shells.size(); ++m) shells[m].m = static_cast<int>(m);
  const int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(max_shell))));
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      for (int c = -r; c <= r; ++c) {
        const WaveVector k{a, b, c};
        const int m = k.shell();
        if (m >= 1 && m <= max_shell) shells[static_cast<std::size_t>(m)].wave_vectors.push_back(k);
      }
  std::vector<Shell> out;
  for (auto& s : shells)
    if (s.m >= 1 && !s.wave_vectors.empty()) out.push_back(std::move(s));
  return out;
}

DivFreeBasis::DivFreeBasis(SpectralLayout layout, std::vector<BasisElement> solenoidal,
                           std::vector<BasisElement> gradient)
    : layout_(layout), solenoidal_(std::move(solenoidal)), gradient_(std::move(gradient)) {}

DivFreeBasis DivFreeBasis::build(double ell, int max_shell) {
  if (max_shell < 1) throw InvalidArgument("basis requires cutoff M >= 1");
  const SpectralLayout layout(ell, max_shell);
  const double volume = layout.volume();
  std::vector<BasisElement> sol;
  std::vector<BasisElement> grad;
  for (int j = 0; j < 3; ++j) {
    BasisElement e{BasisKind::constant, 0, j + 1, {}, {}};
    e.amplitude[static_cast<std::size_t>(j)] = 1.0 / std::sqrt(volume);
    sol.push_back(e);
  }
  // cos-mode amplitude s and sin-mode amplitude -i s give unit L2 norm.
  const double s = 1.0 / std::sqrt(2.0 * volume);
  const Complex cos_amp(s, 0.0), sin_amp(0.0, -s);
  for (const auto& shell : enumerate_shells(max_shell)) {
    std::vector<WaveVector> reps;
    for (const auto& k : shell.wave_vectors)
      if (k.is_pair_representative()) reps.push_back(k);
    std::sort(reps.begin(), reps.end());
    int j = 0, jg = 0;
    for (const auto& k : reps) {
      const auto pol = polarizations(k);
      for (const auto& a : pol) {
        sol.push_back({BasisKind::solenoidal, shell.m, ++j, k, scaled(a, cos_amp)});
        sol.push_back({BasisKind::solenoidal, shell.m, ++j, k, scaled(a, sin_amp)});
      }
      const Vec3 khat = normalized({static_cast<double>(k.k1), static_cast<double>(k.k2), static_cast<double>(k.k3)});
      grad.push_back({BasisKind::gradient, shell.m, ++jg, k, scaled(khat, cos_amp)});
      grad.push_back({BasisKind::gradient, shell.m, ++jg, k, scaled(khat, sin_amp)});
    }
  }
  return DivFreeBasis(layout, std::move(sol), std::move(grad));
}

VectorField DivFreeBasis::field(const BasisElement& e) const {
  VectorField v(layout_);
  v.set(e.k, e.amplitude);
  return v;
}

double DivFreeBasis::eigenvalue(const BasisElement& e) const {
  const double kappa = layout_.wavenumber();
  return e.m * kappa * kappa;
}

double inner_with(const VectorField& u, const BasisElement& e, double ell) {
  const auto c = u.coeff(e.k);
  double re = 0.0;
  for (std::size_t i = 0; i < 3; ++i) re += (c[i] * std::conj(e.amplitude[i])).real();
  const double volume = ell * ell * ell;
  return (e.k.is_zero() ? 1.0 : 2.0) * volume * re;
}

namespace {

void require_projectable(const VectorField& u, const DivFreeBasis& basis) {
  require_same_domain(u.layout(), basis.layout());
  if (u.layout().cutoff() > basis.layout().cutoff()) {
    std::ostringstream msg;
    msg << "field cutoff " << u.layout().cutoff() << " exceeds basis cutoff " << basis.layout().cutoff();
    throw IncompatibleFields(msg.str());
  }
}

VectorField combine(std::span<const double> coefficients, std::span<const BasisElement> elements,
                    const SpectralLayout& layout) {
  if (coefficients.size() != elements.size()) throw InvalidArgument("coefficient count does not match basis");
  VectorField out(layout);
  for (std::size_t n = 0; n < elements.size(); ++n) {
    const auto& e = elements[n];
    auto c = out.coeff(e.k);
    for (std::size_t i = 0; i < 3; ++i) c[i] += coefficients[n] * e.amplitude[i];
    out.set(e.k, c);
  }
  return out;
}

}  // namespace

std::vector<double> project_coefficients(const VectorField& u, const DivFreeBasis& basis) {
  require_projectable(u, basis);
  std::vector<double> out;
  out.reserve(basis.dimension());
  for (const auto& e : basis.solenoidal()) out.push_back(inner_with(u, e, basis.layout().ell()));
  return out;
}

std::vector<double> gradient_coefficients(const VectorField& u, const DivFreeBasis& basis) {
  require_projectable(u, basis);
  std::vector<double> out;
  out.reserve(basis.gradient_entries().size());
  for (const auto& e : basis.gradient_entries()) out.push_back(inner_with(u, e, basis.layout().ell()));
  return out;
}

VectorField reconstruct(std::span<const double> coefficients, const DivFreeBasis& basis) {
  return combine(coefficients, basis.solenoidal(), basis.layout());
}

VectorField reconstruct_gradient(std::span<const double> coefficients, const DivFreeBasis& basis) {
  return combine(coefficients, basis.gradient_entries(), basis.layout());
}

void write_basis(std::ostream& out, const DivFreeBasis& basis) {
  for (const auto& e : basis.solenoidal()) {
    out << "BASIS " << e.m << ' ' << e.j << '\n';
    write_field(out, basis.field(e));
  }
  for (const auto& e : basis.gradient_entries()) {
    out << "BASIS_GRAD " << e.m << ' ' << e.j << '\n';
    write_field(out, basis.field(e));
  }
}

std::vector<LabeledField> read_basis_dump(std::istream& in) {
  LineReader reader(in);
  std::vector<LabeledField> out;
  while (const auto line = reader.next()) {
    std::istringstream ls(*line);
    std::string tag;
    int m = 0, j = 0;
    if (!(ls >> tag >> m >> j) || (tag != "BASIS" && tag != "BASIS_GRAD"))
      throw ParseError("line " + std::to_string(reader.line_number()) + ": expected BASIS index line");
    auto comps = read_field_block(reader);
    if (comps.size() != 3) throw ParseError("basis fields must have 3 components");
    const BasisKind kind = tag == "BASIS_GRAD" ? BasisKind::gradient : (m == 0 ? BasisKind::constant : BasisKind::solenoidal);
    out.push_back({kind, m, j, VectorField(std::move(comps[0]), std::move(comps[1]), std::move(comps[2]))});
  }
  return out;
}

}  // namespace torus
