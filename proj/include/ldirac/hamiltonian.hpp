#pragma once

#include "ldirac/grid.hpp"
#include "ldirac/params.hpp"

// Finite-difference actions of the wave-packing Dirac operator and its
// pieces. Derivatives use the 4th-order central 5-point stencil; each
// application widens the invalid margin by two nodes per edge instead of
// falling back to one-sided formulas. q = 0 is accepted and gives the free
// operator.

namespace ldirac::ops {

/// First derivative from the samples at offsets -2, -1, +1, +2 (4th order).
template <class T>
T d1(const T& fm2, const T& fm1, const T& fp1, const T& fp2, double h) {
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

/// Second derivative from the samples at offsets -2..+2 (4th order).
template <class T>
T d2(const T& fm2, const T& fm1, const T& f0, const T& fp1, const T& fp2, double h) {
  return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
}

/// (p - i q z) f with p = -i hbar d/dz.
ScalarField1D apply_generalized_momentum_1d(const ScalarField1D& f, const PhysParams& params);

/// (c alpha_z p - i q c alpha_z z + beta m c^2) psi.
Field1D apply_H_1d(const Field1D& psi, const PhysParams& params);

/// Off-diagonal massless operator c [[0, P-], [P+, 0]] with
/// P+- = (p_x - i q x) +- i (p_y - i q y). Requires mass = 0.
Field2D apply_H_2d(const Field2D& psi, const PhysParams& params);

/// J_z = -i hbar (x d_y - y d_x) + (hbar / 2) sigma_z.
Field2D jz_apply_2d(const Field2D& psi, const PhysParams& params);

}  // namespace ldirac::ops
