#include "torus/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torus/error.hpp"
#include "torus/fft.hpp"
#include "torus/grid.hpp"
#include "torus/kernels.hpp"
#include "torus/matrix_exp.hpp"
#include "torus/operators.hpp"

namespace torus {

Eigen::MatrixXd LinearizedOperator::transport_at(double t) const {
  if (transport.empty()) throw InvalidArgument("linearized operator has no samples");
  if (autonomous() || t <= times.front()) return transport.front();
  if (t >= times.back()) return transport.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const double theta = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
  return (1.0 - theta) * transport[hi - 1] + theta * transport[hi];
}

Eigen::MatrixXd LinearizedOperator::matrix_at(double t) const {
  Eigen::MatrixXd a = transport_at(t);
  a.diagonal() += diffusion;
  return a;
}

namespace {

// Grid samples of every basis field and its gradient, row per basis element:
// values [3 n^3] and gradients [9 n^3] (component i, derivative j at (3 i + j) n^3).
struct BasisSamples {
  Eigen::MatrixXd values;
  Eigen::MatrixXd gradients;
};

BasisSamples sample_basis(const DivFreeBasis& basis, int n) {
  const auto elems = basis.solenoidal();
  const auto points = static_cast<Eigen::Index>(GridTransform::get(n).points());
  BasisSamples s{Eigen::MatrixXd(static_cast<Eigen::Index>(elems.size()), 3 * points),
                 Eigen::MatrixXd(static_cast<Eigen::Index>(elems.size()), 9 * points)};
  const auto count = static_cast<std::ptrdiff_t>(elems.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    const VectorField v = basis.field(elems[static_cast<std::size_t>(r)]);
    const auto& transform = GridTransform::get(n);
    for (int i = 0; i < 3; ++i) {
      const auto g = transform.to_grid(v[i]);
      s.values.row(r).segment(i * points, points) = Eigen::Map<const Eigen::VectorXd>(g.data(), points);
      for (int j = 0; j < 3; ++j) {
        const auto d = transform.to_grid(partial(v[i], j));
        s.gradients.row(r).segment((3 * i + j) * points, points) = Eigen::Map<const Eigen::VectorXd>(d.data(), points);
      }
    }
  }
  return s;
}

// Form 1: column v' holds the basis coordinates of B(w, v') (dealiased product, exact L2 inner products).
Eigen::MatrixXd transport_by_products(const VectorField& w, const DivFreeBasis& basis, int n) {
  const auto elems = basis.solenoidal();
  const auto dim = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto column = project_coefficients(bilinear_B(w, basis.field(elems[static_cast<std::size_t>(c)]), n), basis);
    out.col(c) = Eigen::Map<const Eigen::VectorXd>(column.data(), dim);
  }
  return out;
}

// Form 2: (w . grad v', v) - (w, v' . grad v) by grid quadrature. Integrands are trigonometric
// polynomials of degree <= 3K per axis, so the rectangle rule with n >= 3K+1 is exact.
Eigen::MatrixXd transport_by_quadrature(const VectorField& w, const BasisSamples& s, double cell, int n) {
  const auto points = static_cast<Eigen::Index>(GridTransform::get(n).points());
  const auto wg = synthesize(w, n);
  const Eigen::Index dim = s.values.rows();
  // (w . grad v')_i for every column element.
  Eigen::MatrixXd transported(dim, 3 * points);
  // w_i v'_j for every column element.
  Eigen::MatrixXd outer(dim, 9 * points);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (int i = 0; i < 3; ++i) {
      auto seg = transported.row(r).segment(i * points, points);
      seg.setZero();
      for (int j = 0; j < 3; ++j) {
        const Eigen::Map<const Eigen::VectorXd> wj(wg[static_cast<std::size_t>(j)].values.data(), points);
        const Eigen::Map<const Eigen::VectorXd> wi(wg[static_cast<std::size_t>(i)].values.data(), points);
        seg += wj.transpose().cwiseProduct(s.gradients.row(r).segment((3 * i + j) * points, points));
        outer.row(r).segment((3 * i + j) * points, points) =
            wi.transpose().cwiseProduct(s.values.row(r).segment(j * points, points));
      }
    }
  // Entry [row v, col v'] = sum_x transported(v') . v - sum_x sum_ij w_i v'_j d_j v_i.
  Eigen::MatrixXd first = s.values * transported.transpose();
  Eigen::MatrixXd second = s.gradients * outer.transpose();
  return cell * (first - second);
}

}  // namespace

LinearizedOperator assemble_linearized(const FieldTrajectory& drift, std::shared_ptr<const DivFreeBasis> basis,
                                       double mu, int grid) {
  if (!basis) throw InvalidArgument("linearized operator needs a basis");
  if (!(mu > 0.0)) throw InvalidArgument("viscosity mu must be positive");
  drift.validate();
  if (drift.empty()) throw InvalidArgument("drift trajectory is empty");
  const auto& layout = basis->layout();
  const int n = grid == 0 ? dealias_grid_size(layout) : grid;
  if (n < 3 * layout.bandwidth() + 1) throw Undersampled("assembly grid too coarse for alias-free products");

  LinearizedOperator op;
  op.basis = basis;
  op.mu = mu;
  op.times = drift.times;
  const auto elems = basis->solenoidal();
  op.diffusion.resize(static_cast<Eigen::Index>(elems.size()));
  for (std::size_t r = 0; r < elems.size(); ++r) op.diffusion[static_cast<Eigen::Index>(r)] = mu * basis->eigenvalue(elems[r]);

  const BasisSamples samples = sample_basis(*basis, n);
  const double cell = std::pow(layout.ell() / n, 3);
  for (std::size_t i = 0; i < drift.size(); ++i) {
    require_same_domain(drift.fields[i].layout(), layout);
    const VectorField w = drift.fields[i].resampled(layout);
    const double d = l2_norm_exact(div(w));
    if (d > 1e-10 * std::max(1.0, gradient_seminorm(w, 1))) {
      std::ostringstream msg;
      msg << "drift is not divergence-free at t = " << drift.times[i] << " (||div w|| = " << d << ")";
      throw InvalidArgument(msg.str());
    }
    Eigen::MatrixXd form1 = transport_by_products(w, *basis, n);
    const Eigen::MatrixXd form2 = transport_by_quadrature(w, samples, cell, n);
    const double gap = (form1 - form2).cwiseAbs().maxCoeff();
    op.form_discrepancy = std::max(op.form_discrepancy, gap);
    if (gap > 1e-10 * (1.0 + form1.cwiseAbs().maxCoeff())) {
      std::ostringstream msg;
      msg << "transport matrix forms disagree by " << gap << " at t = " << drift.times[i];
      throw InvalidArgument(msg.str());
    }
    op.transport.push_back(std::move(form1));
  }
  return op;
}

namespace {

std::vector<Eigen::VectorXd> integrate(const LinearizedOperator& op, const std::function<Eigen::VectorXd(double)>& force,
                                       const Eigen::VectorXd& c0, const SolverConfig& config, double h, int steps) {
  std::vector<Eigen::VectorXd> out{c0};
  Eigen::VectorXd c = c0;
  auto g = [&](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd { return force(t) - op.transport_at(t) * x; };
  if (config.scheme == Scheme::if_rk4) {
    const Eigen::VectorXd full = (-h * op.diffusion).array().exp();
    const Eigen::VectorXd half = (-0.5 * h * op.diffusion).array().exp();
    for (int n = 0; n < steps; ++n) {
      const double t = n * h;
      const Eigen::VectorXd k1 = g(c, t);
      const Eigen::VectorXd k2 = g(half.cwiseProduct(c + 0.5 * h * k1), t + 0.5 * h);
      const Eigen::VectorXd k3 = g(half.cwiseProduct(c) + 0.5 * h * k2, t + 0.5 * h);
      const Eigen::VectorXd k4 = g(full.cwiseProduct(c) + h * half.cwiseProduct(k3), t + h);
      c = full.cwiseProduct(c) +
          h / 6.0 * (full.cwiseProduct(k1) + 2.0 * half.cwiseProduct(k2 + k3) + k4);
      if (!c.allFinite()) throw SolverAbort("blow-up suspected at t = " + std::to_string(t + h));
      out.push_back(c);
    }
  } else {
    const Eigen::VectorXd implicit = (1.0 + h * op.diffusion.array()).inverse();
    for (int n = 0; n < steps; ++n) {
      const double t = n * h;
      c = implicit.cwiseProduct(c + h * g(c, t));
      if (!c.allFinite()) throw SolverAbort("blow-up suspected at t = " + std::to_string(t + h));
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

LinearizedSolution solve_linearized(const LinearizedOperator& op, const Forcing& f, const VectorField& u0,
                                    const SolverConfig& config) {
  config.validate();
  const auto& basis = *op.basis;
  require_same_domain(u0.layout(), basis.layout());
  if (l2_norm_exact(div(u0)) > 1e-10 * std::max(1.0, gradient_seminorm(u0, 1)))
    throw InvalidArgument("initial field is not divergence-free");
  const auto c0v = project_coefficients(u0.resampled(basis.layout()), basis);
  const Eigen::VectorXd c0 = Eigen::Map<const Eigen::VectorXd>(c0v.data(), static_cast<Eigen::Index>(c0v.size()));
  auto force = [&](double t) -> Eigen::VectorXd {
    if (f.is_zero()) return Eigen::VectorXd::Zero(c0.size());
    const auto v = project_coefficients(f.at(t).resampled(basis.layout()), basis);
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  };

  const int steps = config.steps();
  const double h = config.effective_dt();
  LinearizedSolution sol;
  sol.coefficients = integrate(op, force, c0, config, h, steps);
  const auto fine = integrate(op, force, c0, config, h / 2.0, 2 * steps);
  double diff = 0.0;
  for (int n = 0; n <= steps; ++n)
    diff = std::max(diff, (sol.coefficients[static_cast<std::size_t>(n)] - fine[static_cast<std::size_t>(2 * n)]).cwiseAbs().maxCoeff());
  const double amp = std::ldexp(1.0, order_of(config.scheme));
  sol.error_estimate = 2.0 * amp / (amp - 1.0) * diff;
  if (config.error_tolerance && sol.error_estimate > *config.error_tolerance) {
    std::ostringstream msg;
    msg << "step rejected: error estimate " << sol.error_estimate << " exceeds tolerance " << *config.error_tolerance;
    throw SolverAbort(msg.str());
  }

  for (int n = 0; n <= steps; ++n) {
    if (n % config.store_every != 0 && n != steps) continue;
    const auto& c = sol.coefficients[static_cast<std::size_t>(n)];
    sol.trajectory.times.push_back(n * h);
    sol.trajectory.fields.push_back(reconstruct(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())), basis));
  }
  return sol;
}

Eigen::VectorXd linearized_closed_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& f, const Eigen::VectorXd& c0,
                                       double t) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || f.size() != n || c0.size() != n) throw InvalidArgument("closed form: dimension mismatch");
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = -a * t;
  aug.topRightCorner(n, 1) = f * t;
  const Eigen::MatrixXd e = matrix_exponential(aug);
  return e.topLeftCorner(n, n) * c0 + e.topRightCorner(n, 1);
}

}  // namespace torus
