#pragma once

#include <array>

#include "torus/field.hpp"

namespace torus {

// Differential operators act as exact Fourier multipliers: d/dx_j -> i (2pi/ell) k_j.

ScalarField partial(const ScalarField& u, int axis);
VectorField partial(const VectorField& u, int axis);
/// Mixed derivative d^alpha for a multi-index alpha = (a1, a2, a3).
ScalarField partial(const ScalarField& u, const std::array<int, 3>& alpha);
VectorField partial(const VectorField& u, const std::array<int, 3>& alpha);

VectorField grad(const ScalarField& p);
ScalarField div(const VectorField& u);
VectorField rot(const VectorField& u);
ScalarField laplacian(const ScalarField& u);
VectorField laplacian(const VectorField& u);

/// (-Delta)^r with multiplier ((k,k)(2pi/ell)^2)^r on k != 0. The mean is kept for r = 0 and
/// dropped otherwise; r < 0 on a field with nonzero mean throws InvalidArgument.
ScalarField neg_laplacian_pow(const ScalarField& u, double r);
VectorField neg_laplacian_pow(const VectorField& u, double r);

/// (sum_k (1 + (k,k))^s |c_k|^2)^{1/2}; vector fields sum over components.
double sobolev_norm(const ScalarField& u, double s);
double sobolev_norm(const VectorField& u, double s);

/// Exact L2(Q) norm by Parseval: ell^3 sum |c_k|^2.
double l2_norm_exact(const ScalarField& u);
double l2_norm_exact(const VectorField& u);
double inner_l2(const ScalarField& u, const ScalarField& v);
double inner_l2(const VectorField& u, const VectorField& v);

/// ||(-Delta)^{j/2} u||_{L2}, which equals (sum over ordered index tuples of ||d_{i1..ij} u||^2)^{1/2}.
double gradient_seminorm(const ScalarField& u, int j);
double gradient_seminorm(const VectorField& u, int j);

/// Mean value c_0.
double mean(const ScalarField& u);

}  // namespace torus
