#pragma once

#include <cstddef>

#include "ldirac/grid.hpp"
#include "ldirac/hamiltonian.hpp"
#include "ldirac/params.hpp"
#include "ldirac/states.hpp"

namespace ldirac::ops {

/// Symmetric grid over the truncation radius of the state's parameters.
Grid1D default_grid_1d(const PhysParams& params, std::size_t n);
Grid2D default_grid_2d(const PhysParams& params, std::size_t n);
RadialGrid default_radial_grid(const PhysParams& params, std::size_t n);

Field1D sample_state(const states::State1D& s, const Grid1D& g);
Field2D sample_state(const states::State2D& s, const Grid2D& g);

/// ||H psi - E psi|| / ||E psi|| on the valid interior. For E = 0 the
/// denominator is the norm of the free (q = 0) part of H psi instead.
double eigen_residual_1d(const states::State1D& s, std::size_t n);
double eigen_residual_2d(const states::State2D& s, std::size_t n);

struct JzCheck {
  /// Rayleigh quotient <psi, J_z psi> / <psi, psi>.
  double eigenvalue = 0.0;
  /// ||J_z psi - (m + 1/2) hbar psi|| / ||(m + 1/2) hbar psi||
  double residual = 0.0;
};

JzCheck jz_eigen_check_2d(const states::State2D& s, std::size_t n);

/// Which right-hand factor to use in the equation for u in the radial pair.
///  - consistent: -(E + mc^2) / hbar c, matching the dispersion relation.
///  - alternate:  -(E - mc^2) / hbar c, the other reading of that equation.
enum class VEquationReading { consistent, alternate };

struct RadialResiduals {
  /// (d/dr + (lambda+1)/r + q r / hbar) v - ((E - mc^2) / hbar c) u
  double res_u = 0.0;
  /// (d/dr - (lambda-1)/r + q r / hbar) u + ((E +- mc^2) / hbar c) v
  double res_v = 0.0;
};

/// Residuals are ||sum of terms|| / max_term ||term||, or 0 when all terms
/// vanish. u and v carry the state's constant and amplitudes.
RadialResiduals radial_residuals_3d(const states::State3D& s, const RadialGrid& grid,
                                    VEquationReading reading = VEquationReading::consistent);

/// Second-order scalar equations in the scaled coordinate sqrt(q / hbar) x.
///  - line:         u'' + 2z u' + (z^2 + K1) u = 0 for the 1D scalar factor.
///  - planar:       f'' + (1/r + 2r) f' + (r^2 - m^2/r^2 + K3) f = 0, 2D upper factor.
///  - radial_upper: u'' + (2/r + 2r) u' + (r^2 - lambda(lambda-1)/r^2 + K4) u = 0.
///  - radial_lower: same with lambda(lambda+1), for v.
enum class ScalarOde { line, planar, radial_upper, radial_lower };

/// Relative residual ||sum of terms|| / max_term ||term|| on [-sqrt 60, sqrt 60]
/// (line) or (0, sqrt 60] (radial kinds). Throws std::invalid_argument when the
/// state's dimension does not match the equation.
double scalar_ode_residual(const states::ClosedFormState& s, ScalarOde which, std::size_t n = 4001);

/// ||PT (p - iqz) PT f - (p - iqz) f|| / ||(p - iqz) f|| with
/// (PT f)(z) = conj(f(-z)). The grid must be symmetric.
double pt_transform_check(const PhysParams& params, const ScalarField1D& f);

/// Largest |S^{-1} psi| admitted before similarity_check gives up.
inline constexpr double kMaxAmplified = 1e12;

/// ||S H0 S^{-1} psi - H psi|| / ||H psi||, S = exp(-q z^2 / 2 hbar), H0 the
/// free operator. Throws std::overflow_error when S^{-1} psi exceeds kMaxAmplified.
double similarity_check(const PhysParams& params, const Field1D& psi);

/// ||Sigma_z H psi - H Sigma_z psi|| / ||H psi|| (0 when H psi vanishes).
double commutator_sigma_z_1d(const PhysParams& params, const Field1D& psi);

}  // namespace ldirac::ops
