#pragma once

#include "torus/field.hpp"

namespace torus {

// Pseudo-spectral products: derivatives are taken spectrally, products formed on a grid with
// n >= 3K+1 points per axis and the result truncated back to the operand layout. With that
// padding the output is the exact Galerkin truncation of the product (no aliasing).
// n = 0 selects dealias_grid_size(layout). Grid transforms and pointwise loops run under OpenMP
// without cross-thread reductions, so results do not depend on the thread count.

/// (w . grad) u.
VectorField convect(const VectorField& w, const VectorField& u, int n = 0);
/// D u = (u . grad) u.
VectorField nonlinear_D(const VectorField& u, int n = 0);
/// B(w, u) = (w . grad) u + (u . grad) w.
VectorField bilinear_B(const VectorField& w, const VectorField& u, int n = 0);

}  // namespace torus
