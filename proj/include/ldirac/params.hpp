#pragma once

#include <complex>

namespace ldirac {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Physical constants of the wave-packing Dirac equation. Defaults are
/// natural units; every formula keeps hbar and c symbolic.
struct PhysParams {
  double hbar = 1.0;
  double c = 1.0;
  double mass = 0.0;
  /// Envelope parameter: sets the Gaussian width exp(-q r^2 / 2 hbar).
  double q = 1.0;

  /// Throws std::invalid_argument unless hbar, c > 0, mass >= 0 and q > 0
  /// (q >= 0 when allow_zero_q, used by the free-operator limit).
  void validate(bool allow_zero_q = false) const;

  /// Rest energy m c^2.
  double rest_energy() const { return mass * c * c; }

  /// Radius where the envelope density has fallen to e^-30 on each side.
  double truncation_radius() const;
};

}  // namespace ldirac
