#pragma once

#include "torus/field.hpp"
#include "torus/grid.hpp"

/// Serial reference implementations of the grid kernels. They share no code path with the
/// FFT-based kernels and are used to check them in tests and benchmarks.
namespace torus::reference {

/// (w . grad) u by direct convolution over coefficient pairs, truncated to u's layout.
VectorField convect(const VectorField& w, const VectorField& u);

/// Direct evaluation of sum_k c_k exp(i (k,x) 2pi/ell) at every grid point.
SampledGrid synthesize(const ScalarField& u, int n);

}  // namespace torus::reference
