#include "torus/reference.hpp"

#include <cmath>

#include "torus/error.hpp"
#include "torus/fft.hpp"

namespace torus::reference {

VectorField convect(const VectorField& w, const VectorField& u) {
  require_same_layout(w.layout(), u.layout());
  const auto& layout = u.layout();
  const double kappa = layout.wavenumber();
  const auto modes = layout.modes();
  VectorField out(layout);
  for (const auto& k : modes) {
    std::array<Complex, 3> acc{};
    for (const auto& p : modes) {
      const WaveVector q = k - p;
      if (!layout.admits(q)) continue;
      const auto wp = w.coeff(p);
      const auto uq = u.coeff(q);
      // (w . grad) u at mode k: sum_{p+q=k} sum_j w_j(p) i kappa q_j u_i(q)
      const Complex transport = Complex(0.0, kappa) * (wp[0] * static_cast<double>(q.k1) +
                                                       wp[1] * static_cast<double>(q.k2) +
                                                       wp[2] * static_cast<double>(q.k3));
      for (std::size_t i = 0; i < 3; ++i) acc[i] += transport * uq[i];
    }
    for (int i = 0; i < 3; ++i) out[i].mutable_data()[layout.index(k)] = acc[static_cast<std::size_t>(i)];
  }
  return out;
}

SampledGrid synthesize(const ScalarField& u, int n) {
  require_valid_grid(n);
  const auto& layout = u.layout();
  if (n < 2 * layout.bandwidth() + 1) throw Undersampled("undersampled: grid too coarse for bandwidth");
  const double phase_unit = 2.0 * M_PI / n;
  std::vector<std::pair<WaveVector, Complex>> terms;
  for (const auto& k : layout.modes())
    if (u.coeff(k) != Complex{}) terms.emplace_back(k, u.coeff(k));
  SampledGrid out{layout.ell(), n, std::vector<double>(static_cast<std::size_t>(n) * n * n, 0.0)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (const auto& [k, ck] : terms) {
          const double phase = phase_unit * (k.k1 * a + k.k2 * b + k.k3 * c);
          v += ck.real() * std::cos(phase) - ck.imag() * std::sin(phase);
        }
        out.at(a, b, c) = v;
      }
  return out;
}

}  // namespace torus::reference
