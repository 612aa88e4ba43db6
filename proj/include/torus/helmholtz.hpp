#pragma once

#include "torus/field.hpp"

namespace torus {

/// u = solenoidal + gradient_part, gradient_part = grad(potential), potential zero-mean.
struct ProjectionDecomposition {
  VectorField solenoidal;
  VectorField gradient_part;
  ScalarField potential;
};

/// Leray projection P: c_k -> c_k - k (k . c_k)/(k,k) for k != 0, mean unchanged.
VectorField leray_project(const VectorField& u);
/// (I - P) u.
VectorField gradient_part(const VectorField& u);
/// Zero-mean p with grad p = (I - P) g.
ScalarField potential_of(const VectorField& g);
ProjectionDecomposition decompose(const VectorField& u);

/// ||d_j (P u) - P (d_j u)||_{L2}, axis j in {0,1,2}.
double commutes_with_derivative_check(const VectorField& u, int axis);

/// Zero-mean pressure with grad p = (I - P)(f - D u).
ScalarField recover_pressure(const VectorField& f, const VectorField& u, int grid = 0);

/// (ell^3 sum_k (1 + (k,k)(2pi/ell)^2)^{-s} |c_k(P f)|^2)^{1/2}. For s = 1 this is exactly the
/// supremum of |(f,v)| / ||v||_{H1} over divergence-free v, with ||v||_{H1}^2 = ||v||^2 + ||grad v||^2.
/// For s >= 2 it is an equivalent norm for the dual of V_s, not the supremum itself.
double dual_norm(const VectorField& f, int s);

/// The divergence-free v attaining the s = 1 supremum (up to scaling).
VectorField dual_norm_supremizer(const VectorField& f);

}  // namespace torus
