#pragma once

#include <complex>

// Special functions needed by the localized states: cylindrical and
// spherical Bessel functions of the first kind, their modified
// counterparts, and spherical harmonics.
//
// Argument errors raise std::domain_error, bad indices std::out_of_range,
// and arguments beyond the exponent range std::overflow_error. All
// functions are pure.

namespace ldirac::specfun {

struct SpecFunResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

inline constexpr int kMaxBesselOrder = 64;
inline constexpr double kMaxBesselJArg = 1.0e4;
inline constexpr double kMaxBesselIArg = 700.0;
inline constexpr int kMaxHarmonicDegree = 32;
/// Smallest argument accepted by modified_spherical_f.
inline constexpr double kMinModifiedSphericalArg = 1.0e-6;

/// J_n(x) for integer 0 <= n <= 64 and 0 <= x <= 1e4.
double bessel_j(int order, double x);
SpecFunResult bessel_j_result(int order, double x);

/// I_n(x) for 0 <= n <= 64 and 0 <= x <= 700.
double bessel_i(int order, double x);
/// exp(-x) I_n(x); same domain as bessel_i.
double bessel_i_scaled(int order, double x);
SpecFunResult bessel_i_result(int order, double x);

/// Spherical Bessel function of the first kind j_n(x), x >= 0.
double spherical_j(int order, double x);

/// f_n(z) = sqrt(pi / 2z) I_{n+1/2}(z) for 1e-6 <= z <= 700. Smaller
/// arguments raise std::domain_error; the caller uses the small-z limit.
double modified_spherical_f(int order, double z);
/// exp(-z) f_n(z).
double modified_spherical_f_scaled(int order, double z);

/// Y_l^m(theta, phi) with quantum-mechanics normalization and the
/// Condon-Shortley phase. Throws std::out_of_range for |m| > l or l > 32.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

}  // namespace ldirac::specfun
