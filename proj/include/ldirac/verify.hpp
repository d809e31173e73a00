#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldirac/params.hpp"
#include "ldirac/states.hpp"

namespace ldirac::verify {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Findings about printed constants; reported but excluded from `overall`.
  bool informative = false;
  std::map<std::string, double> metadata;
};

/// Builds a result with passed = (residual <= tolerance).
CheckResult make_check(std::string name, double residual, double tolerance,
                       std::map<std::string, double> metadata = {});

struct StateRequest {
  int dim = 1;
  double k = 1.0;
  states::EnergyBranch branch = states::EnergyBranch::positive;
  states::Spin spin = states::Spin::up;
  int m_ang = 0;
  int two_j = 1;
  int two_m = 1;
  states::AmplitudeMode mode = states::AmplitudeMode::derived;
};

enum class Profile { fast, strict };

/// Resolutions and tolerance multiplier of a profile.
struct ProfileSettings {
  std::size_t n_1d;
  std::size_t n_2d;
  std::size_t n_radial;
  std::size_t n_ode;
  double tol_scale;
};

ProfileSettings profile_settings(Profile p);

struct VerificationReport {
  PhysParams params;
  StateRequest request;
  states::StateSpec spec;
  Profile profile = Profile::fast;
  std::vector<CheckResult> checks;
  bool overall = false;
  std::vector<std::string> paper_notes;
};

/// AND of `passed` over non-informative checks.
bool overall_verdict(const std::vector<CheckResult>& checks);

/// Runs the dimension-appropriate suite. `grid_points`, when given, replaces
/// the profile's primary grid size. Construction errors propagate.
VerificationReport verify_state(const StateRequest& request, const PhysParams& params, Profile profile,
                                std::optional<std::size_t> grid_points = std::nullopt);

struct UncertaintyProduct {
  double dz = 0.0;
  double dp = 0.0;
  double product_over_hbar = 0.0;
};

/// Position spread by adaptive Simpson on the truncated domain; momentum
/// spread from the momentum-space density, whose amplitudes come from a
/// trapezoidal Fourier integral over z.
UncertaintyProduct uncertainty_product_1d(const states::State1D& s);

struct SweepRow {
  double k = 0.0;
  double q = 0.0;
  double energy = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double tolerance = 0.0;
  /// For every k, E is bit-identical across all q.
  bool q_independent = false;
  bool all_pass = false;
};

/// Rows in k-major order. Residual is the eigen residual (1D, 2D) or the
/// larger radial residual (3D, j = m = 1/2). Throws std::invalid_argument on
/// empty lists.
SweepResult dispersion_sweep(int dim, const std::vector<double>& k_list, const std::vector<double>& q_list,
                             double mass, Profile profile = Profile::strict, double hbar = 1.0, double c = 1.0);

struct ConvergencePoint {
  std::size_t n = 0;
  double h = 0.0;
  double residual = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergencePoint> points;
  /// Least-squares slope of log(residual) against log(h); 0 when exact.
  double order = 0.0;
  /// Every residual sat below the rounding floor.
  bool exact = false;
  std::size_t used_points = 0;
};

inline constexpr double kRoundingFloor = 1e-13;

/// `check` maps a node count to (h, residual). Needs at least 3 sizes; points
/// below kRoundingFloor are dropped from the fit. Throws std::invalid_argument
/// for fewer than 3 sizes and std::domain_error when only 1 or 2 points remain.
ConvergenceResult convergence_study(const std::function<ConvergencePoint(std::size_t)>& check,
                                    const std::vector<std::size_t>& sizes);

}  // namespace ldirac::verify
