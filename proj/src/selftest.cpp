#include "torus/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "torus/eigenbasis.hpp"
#include "torus/error.hpp"
#include "torus/helmholtz.hpp"
#include "torus/navier_stokes.hpp"
#include "torus/operators.hpp"
#include "torus/perov.hpp"
#include "torus/problems.hpp"

namespace torus {

namespace {

double max_coeff(const ScalarField& u) { return u.max_abs_coeff(); }
double max_coeff(const VectorField& u) { return u.max_abs_coeff(); }

double ratio(double defect, double scale) { return scale > 0.0 ? defect / scale : defect; }

SelftestCheck check(std::string name, int cutoff, double value, double tolerance, std::string detail = {}) {
  return {std::move(name), cutoff, value, tolerance, value <= tolerance, std::move(detail)};
}

void projection_checks(const SpectralLayout& layout, std::mt19937_64& rng, int samples, std::vector<SelftestCheck>& out) {
  double idem = 0.0, adjoint = 0.0, divergence = 0.0, commute = 0.0;
  const double top = layout.wavenumber() * std::max(1, layout.bandwidth());
  for (int i = 0; i < samples; ++i) {
    const auto u = random_vector_field(layout, rng, 0.1);
    const auto v = random_vector_field(layout, rng, 0.1);
    const auto pu = leray_project(u);
    idem = std::max(idem, ratio(max_coeff(leray_project(pu) - pu), max_coeff(u)));
    const double scale = l2_norm_exact(u) * l2_norm_exact(v);
    adjoint = std::max(adjoint, ratio(std::abs(inner_l2(pu, v) - inner_l2(u, leray_project(v))), scale));
    divergence = std::max(divergence, ratio(max_coeff(div(pu)), top * max_coeff(u)));
    for (int axis = 0; axis < 3; ++axis)
      commute = std::max(commute, ratio(commutes_with_derivative_check(u, axis), top * l2_norm_exact(u)));
  }
  const int m = layout.cutoff();
  out.push_back(check("projection.idempotent", m, idem, 1e-13));
  out.push_back(check("projection.self_adjoint", m, adjoint, 1e-13));
  out.push_back(check("projection.divergence_free", m, divergence, 1e-13));
  out.push_back(check("projection.commutes_with_derivatives", m, commute, 1e-13));
}

void de_rham_checks(const SpectralLayout& layout, std::mt19937_64& rng, int samples, std::vector<SelftestCheck>& out) {
  double rot_grad = 0.0, div_rot = 0.0, laplace = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto p = random_scalar_field(layout, rng, 0.1);
    const auto u = random_vector_field(layout, rng, 0.1);
    const double scale = max_coeff(laplacian(u));
    rot_grad = std::max(rot_grad, ratio(max_coeff(rot(grad(p))), max_coeff(laplacian(p))));
    div_rot = std::max(div_rot, ratio(max_coeff(div(rot(u))), scale));
    VectorField r = grad(div(u)) - rot(rot(u));
    r -= laplacian(u);
    laplace = std::max(laplace, ratio(max_coeff(r), scale));
  }
  const int m = layout.cutoff();
  out.push_back(check("derham.rot_grad", m, rot_grad, 1e-13));
  out.push_back(check("derham.div_rot", m, div_rot, 1e-13));
  out.push_back(check("derham.vector_laplacian", m, laplace, 1e-13));
}

std::vector<LabeledField> basis_fields(const DivFreeBasis& basis) {
  std::vector<LabeledField> out;
  for (const auto& e : basis.solenoidal()) out.push_back({e.kind, e.m, e.j, basis.field(e)});
  for (const auto& e : basis.gradient_entries()) out.push_back({e.kind, e.m, e.j, basis.field(e)});
  return out;
}

void basis_checks(const std::vector<LabeledField>& fields, int cutoff, std::vector<SelftestCheck>& out) {
  double gram = 0.0;
  for (std::size_t a = 0; a < fields.size(); ++a)
    for (std::size_t b = a; b < fields.size(); ++b) {
      const double g = inner_l2(fields[a].field, fields[b].field);
      gram = std::max(gram, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  double eigen = 0.0;
  for (const auto& f : fields) {
    const double kappa = f.field.layout().wavenumber();
    const double lambda = f.m * kappa * kappa;
    VectorField r(f.field.layout());
    if (f.kind == BasisKind::gradient) {
      r = grad(div(f.field));
      r.axpy(lambda, f.field);
    } else {
      r = rot(rot(f.field));
      r.axpy(-lambda, f.field);
    }
    eigen = std::max(eigen, ratio(max_coeff(r), std::max(1.0, lambda) * max_coeff(f.field)));
  }
  const std::string detail = std::to_string(fields.size()) + " fields";
  out.push_back(check("basis.gram", cutoff, gram, 1e-12, detail));
  out.push_back(check("basis.eigenfunctions", cutoff, eigen, 1e-11, detail));
}

void energy_check(const SpectralLayout& layout, std::vector<SelftestCheck>& out) {
  SolverConfig config;
  config.ell = layout.ell();
  config.cutoff = layout.cutoff();
  config.T = 0.5;
  config.dt = 1e-3;
  const auto run = solve_navier_stokes(Forcing::zero(layout), shear_mode(layout, 1.0), config);
  const auto defect = energy_identity_defect(run.trajectory, Forcing::zero(layout), config.mu);
  double worst = 0.0;
  for (double d : defect) worst = std::max(worst, std::abs(d));
  out.push_back(check("energy.identity_shear", layout.cutoff(), worst, 1e-6));
}

void perov_checks(int cutoff, std::vector<SelftestCheck>& out) {
  PerovInput in;
  for (int i = 0; i <= 100; ++i) in.times.push_back(0.01 * i);
  in.A = 2.0;
  in.B.assign(in.times.size(), 0.7);
  in.C.assign(in.times.size(), 0.0);
  auto bound = perov_bound(in);
  double gronwall = 0.0;
  for (std::size_t i = 0; i < bound.size(); ++i)
    gronwall = std::max(gronwall, std::abs(bound[i] - 2.0 * std::exp(0.7 * in.times[i])) / bound[i]);
  in.A = 1.0;
  in.gamma = 0.5;
  in.B.assign(in.times.size(), 0.0);
  in.C.assign(in.times.size(), 1.0);
  bound = perov_bound(in);
  double perov = 0.0;
  for (std::size_t i = 0; i < bound.size(); ++i) {
    const double y = 1.0 + in.times[i] / 2.0;
    perov = std::max(perov, std::abs(bound[i] - y * y));
  }
  out.push_back(check("perov.gronwall_closed_form", cutoff, gronwall, 1e-10));
  out.push_back(check("perov.half_power_closed_form", cutoff, perov, 1e-10));
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  std::vector<SelftestCheck> out;
  std::vector<LabeledField> dumped;
  if (options.basis_path) {
    std::ifstream in(*options.basis_path);
    if (!in) throw InvalidArgument("cannot open basis dump " + *options.basis_path);
    dumped = read_basis_dump(in);
    if (dumped.empty()) throw ParseError("basis dump " + *options.basis_path + " holds no fields");
  }
  for (int cutoff : options.cutoffs) {
    if (cutoff < 1) throw InvalidArgument("selftest cutoffs must be >= 1");
    const SpectralLayout layout(options.ell, cutoff);
    std::mt19937_64 rng(options.seed);
    projection_checks(layout, rng, options.samples, out);
    de_rham_checks(layout, rng, options.samples, out);
    if (dumped.empty()) {
      basis_checks(basis_fields(DivFreeBasis::build(options.ell, cutoff)), cutoff, out);
    } else {
      basis_checks(dumped, dumped.front().field.layout().cutoff(), out);
    }
    energy_check(layout, out);
    perov_checks(cutoff, out);
  }
  return out;
}

void print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks) {
  char line[256];
  std::snprintf(line, sizeof line, "%-40s %4s %12s %10s  %s\n", "check", "M", "defect", "tol", "result");
  out << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-40s %4d %12.3e %10.1e  %s", c.name.c_str(), c.cutoff, c.value, c.tolerance,
                  c.pass ? "PASS" : "FAIL");
    out << line;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; });
  out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
}

}  // namespace torus
