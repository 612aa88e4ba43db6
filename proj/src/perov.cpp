#include "torus/perov.hpp"

#include <cmath>

#include "torus/error.hpp"
#include "torus/trajectory.hpp"

namespace torus {

std::vector<double> perov_bound(const PerovInput& in) {
  if (!(in.gamma > 0.0 && in.gamma <= 1.0)) throw InvalidArgument("gamma must lie in (0, 1]");
  if (in.A < 0.0) throw InvalidArgument("A must be nonnegative");
  if (in.times.empty() || in.B.size() != in.times.size() || in.C.size() != in.times.size())
    throw InvalidArgument("B and C must be sampled on the time grid");
  for (std::size_t i = 1; i < in.times.size(); ++i)
    if (!(in.times[i] > in.times[i - 1])) throw InvalidArgument("time grid must increase strictly");
  for (std::size_t i = 0; i < in.times.size(); ++i)
    if (in.B[i] < 0.0 || in.C[i] < 0.0) throw InvalidArgument("negative samples in B or C");

  const double g = in.gamma;
  const auto int_b = cumulative_trapezoid(in.times, in.B);
  // int_a^t C(s) exp(g (IB(t) - IB(s))) ds = exp(g IB(t)) int_a^t C(s) exp(-g IB(s)) ds
  std::vector<double> weighted(in.times.size());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] = in.C[i] * std::exp(-g * int_b[i]);
  const auto int_c = cumulative_trapezoid(in.times, weighted);

  std::vector<double> out(in.times.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double growth = std::exp(g * int_b[i]);
    const double inner = std::pow(in.A, g) * growth + g * growth * int_c[i];
    out[i] = g == 1.0 ? inner : std::pow(inner, 1.0 / g);
  }
  return out;
}

}  // namespace torus
