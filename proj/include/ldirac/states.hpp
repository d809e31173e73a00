#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include "ldirac/params.hpp"
#include "ldirac/spin_algebra.hpp"

namespace ldirac::states {

enum class EnergyBranch { positive, negative };
enum class Spin { up, down };

/// How the relative amplitude of the lower spinor block is chosen.
///  - paper:    the printed spinors, all relative amplitudes equal to 1.
///  - derived:  solved from the first-order coupled equations.
///  - auto_fit: (2D only) least-squares fit to the planar eigen-equation.
enum class AmplitudeMode { paper, derived, auto_fit };

/// Sign(E) sqrt(hbar^2 k^2 c^2 + m^2 c^4); independent of q by construction.
double dispersion_energy(const PhysParams& params, double k, EnergyBranch branch);

struct StateSpec {
  int dim = 1;
  double k = 0.0;
  EnergyBranch branch = EnergyBranch::positive;
  Spin spin = Spin::up;
  int m_ang = 0;
  std::optional<spin::AngularQuantumNumbers> qn;

  // Derived constants; the scaled ones refer to the coordinate sqrt(q/hbar) x.
  double energy = 0.0;
  double alpha = 0.0;  // k sqrt(hbar/q)
  double rho = 0.0;    // E / (c sqrt(hbar q))
  double gamma = 0.0;  // sqrt(E^2 - m^2 c^4) / (c sqrt(hbar q))
  double K1 = 0.0;
  double K2 = 0.0;
  double K3 = 0.0;
  double K4 = 0.0;
};

StateSpec make_spec(int dim, const PhysParams& params, double k, EnergyBranch branch,
                    Spin spin = Spin::up, int m_ang = 0,
                    std::optional<spin::AngularQuantumNumbers> qn = std::nullopt);

/// Closed-form 1D packet N s(z) (a_u, 0, a_l, 0) for spin up or
/// N s(z) (0, a_u, 0, a_l) for spin down, with s(z) = e^{ikz} e^{-q z^2 / 2 hbar}.
class State1D {
 public:
  State1D(const PhysParams& params, const StateSpec& spec, cplx upper_amp, cplx lower_amp,
          AmplitudeMode mode);

  const PhysParams& params() const { return params_; }
  const StateSpec& spec() const { return spec_; }
  AmplitudeMode mode() const { return mode_; }
  double norm_const() const { return norm_; }
  cplx upper_amp() const { return upper_; }
  cplx lower_amp() const { return lower_; }
  /// lower / upper relative amplitude.
  cplx component_ratio() const { return lower_ / upper_; }

  /// e^{ikz} e^{-q z^2 / 2 hbar}
  cplx scalar_factor(double z) const;
  spin::Spinor4 operator()(double z) const;

  State1D with_norm_const(double n) const;

 private:
  PhysParams params_;
  StateSpec spec_;
  cplx upper_;
  cplx lower_;
  AmplitudeMode mode_;
  double norm_;
};

/// Massless planar packet N e^{i m phi} e^{-q r^2 / 2 hbar} (J_m(kr), a e^{i phi} J_{m+1}(kr)).
class State2D {
 public:
  State2D(const PhysParams& params, const StateSpec& spec, cplx lower_amp, AmplitudeMode mode);

  const PhysParams& params() const { return params_; }
  const StateSpec& spec() const { return spec_; }
  AmplitudeMode mode() const { return mode_; }
  double norm_const() const { return norm_; }
  cplx lower_amp() const { return lower_; }

  /// J_m(kr) e^{-q r^2 / 2 hbar}
  double radial_upper(double r) const;
  /// J_{m+1}(kr) e^{-q r^2 / 2 hbar}
  double radial_lower(double r) const;

  spin::Spinor2 polar(double r, double phi) const;
  spin::Spinor2 operator()(double x, double y) const;

  State2D with_norm_const(double n) const;

 private:
  PhysParams params_;
  StateSpec spec_;
  cplx lower_;
  AmplitudeMode mode_;
  double norm_;
};

/// 3D packet: psi_1 = N b_u j_{lambda'}(kr) g(r) y_{lambda'},
/// psi_2 = -i N b_v j_lambda(kr) g(r) y_lambda, with g(r) = e^{-q r^2 / 2 hbar}.
class State3D {
 public:
  State3D(const PhysParams& params, const StateSpec& spec, cplx upper_amp, cplx lower_amp,
          AmplitudeMode mode);

  const PhysParams& params() const { return params_; }
  const StateSpec& spec() const { return spec_; }
  const spin::AngularQuantumNumbers& qn() const { return *spec_.qn; }
  AmplitudeMode mode() const { return mode_; }
  double norm_const() const { return norm_; }
  cplx upper_amp() const { return upper_; }
  cplx lower_amp() const { return lower_; }

  /// j_{lambda'}(kr) g(r)
  double radial_u(double r) const;
  /// j_lambda(kr) g(r)
  double radial_v(double r) const;

  spin::Spinor4 operator()(double r, double theta, double phi) const;

  State3D with_norm_const(double n) const;

 private:
  PhysParams params_;
  StateSpec spec_;
  cplx upper_;
  cplx lower_;
  AmplitudeMode mode_;
  double norm_;
  spin::SpinAngleFunction y_upper_;
  spin::SpinAngleFunction y_lower_;
};

using ClosedFormState = std::variant<State1D, State2D, State3D>;

/// Throws std::invalid_argument for q <= 0, k < 0, or mode = auto_fit.
State1D construct_1d(const PhysParams& params, double k, Spin spin, EnergyBranch branch,
                     AmplitudeMode mode = AmplitudeMode::derived);

/// Throws std::invalid_argument for mass != 0 or m_ang < 0. auto_fit fits the
/// lower amplitude on a square grid of fit_grid_points^2 nodes covering the
/// truncation radius.
State2D construct_2d(const PhysParams& params, double k, int m_ang, EnergyBranch branch,
                     AmplitudeMode mode = AmplitudeMode::auto_fit,
                     std::size_t fit_grid_points = 401);

State3D construct_3d(const PhysParams& params, double k, const spin::AngularQuantumNumbers& qn,
                     EnergyBranch branch, AmplitudeMode mode = AmplitudeMode::derived);

struct NormalizationResult {
  /// Printed closed-form constant for the state's dimension.
  double closed_form = 0.0;
  /// Constant from integrating Psi^dagger Psi by adaptive Simpson.
  double quadrature = 0.0;
  double rel_diff = 0.0;
};

/// Largest hbar k^2 / 2q for which normalization() evaluates the closed forms.
inline constexpr double kMaxNormalizationArg = 60.0;

/// The 2D and 3D overloads throw std::domain_error when hbar k^2 / 2q exceeds
/// kMaxNormalizationArg; the 1D closed form involves no Bessel function.
NormalizationResult normalization(const State1D& s);
NormalizationResult normalization(const State2D& s);
NormalizationResult normalization(const State3D& s);
NormalizationResult normalization(const ClosedFormState& s);

/// Copy of the state with its constant replaced by the quadrature value.
State1D quadrature_normalized(const State1D& s);
State2D quadrature_normalized(const State2D& s);
State3D quadrature_normalized(const State3D& s);

/// Integral of Psi^dagger Psi with the state's current constant, using a
/// uniform composite Simpson rule (independent of the adaptive one).
double probability_integral(const State1D& s, std::size_t panels = 20000);
double probability_integral(const State2D& s, std::size_t panels = 20000);
double probability_integral(const State3D& s, std::size_t panels = 20000);

}  // namespace ldirac::states
