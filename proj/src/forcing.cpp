#include "torus/forcing.hpp"

#include <algorithm>

#include "torus/error.hpp"

namespace torus {

Forcing Forcing::zero(SpectralLayout layout) { return Forcing(Kind::zero, layout); }

Forcing Forcing::analytic(SpectralLayout layout, std::vector<Function> derivatives) {
  if (derivatives.empty()) throw InvalidArgument("analytic forcing needs at least its value function");
  Forcing f(Kind::analytic, layout);
  f.derivatives_ = std::move(derivatives);
  return f;
}

Forcing Forcing::steady(VectorField value) {
  Forcing f(Kind::steady, value.layout());
  f.derivatives_.push_back([value = std::move(value)](double) { return value; });
  return f;
}

Forcing Forcing::sampled(FieldTrajectory samples) {
  samples.validate();
  if (samples.empty()) throw InvalidArgument("sampled forcing needs at least one sample");
  Forcing f(Kind::sampled, samples.layout());
  f.samples_ = std::make_shared<const FieldTrajectory>(std::move(samples));
  return f;
}

VectorField Forcing::at(double t) const { return derivative(t, 0); }

VectorField Forcing::derivative(double t, int order) const {
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (order > derivative_depth()) throw InvalidArgument("forcing time derivative not available at this order");
  switch (kind_) {
    case Kind::zero:
      return VectorField(layout_);
    case Kind::steady:
      return order == 0 ? derivatives_[0](t) : VectorField(layout_);
    case Kind::analytic:
      return derivatives_[static_cast<std::size_t>(order)](t);
    case Kind::sampled: {
      const auto& s = *samples_;
      if (order == 0) return s.interpolate(t);
      if (s.size() < 2) return VectorField(layout_);
      // Slope of the interpolating segment containing t.
      auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
      hi = std::clamp<std::size_t>(hi, 1, s.size() - 1);
      VectorField slope = s.fields[hi] - s.fields[hi - 1];
      slope *= 1.0 / (s.times[hi] - s.times[hi - 1]);
      return slope;
    }
  }
  return VectorField(layout_);
}

int Forcing::derivative_depth() const {
  switch (kind_) {
    case Kind::zero:
    case Kind::steady:
      return std::numeric_limits<int>::max();
    case Kind::analytic:
      return static_cast<int>(derivatives_.size()) - 1;
    case Kind::sampled:
      return 1;
  }
  return 0;
}

}  // namespace torus
