#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "torus/field.hpp"
#include "torus/trajectory.hpp"

namespace torus {

/// External force f(x, t). Either identically zero, analytic (a callable per time-derivative
/// order), or sampled in time with linear interpolation between samples.
class Forcing {
 public:
  using Function = std::function<VectorField(double)>;

  static Forcing zero(SpectralLayout layout);
  /// derivatives[0] is f itself, derivatives[j] its j-th time derivative.
  static Forcing analytic(SpectralLayout layout, std::vector<Function> derivatives);
  /// Steady forcing f(x).
  static Forcing steady(VectorField f);
  static Forcing sampled(FieldTrajectory samples);

  const SpectralLayout& layout() const { return layout_; }
  bool is_zero() const { return kind_ == Kind::zero; }

  VectorField at(double t) const;
  /// order-th time derivative; order 0 is at(t).
  VectorField derivative(double t, int order) const;
  /// Highest available derivative order.
  int derivative_depth() const;

 private:
  enum class Kind { zero, analytic, steady, sampled };
  Forcing(Kind kind, SpectralLayout layout) : kind_(kind), layout_(layout) {}

  Kind kind_;
  SpectralLayout layout_;
  std::vector<Function> derivatives_;
  std::shared_ptr<const FieldTrajectory> samples_;
};

}  // namespace torus
