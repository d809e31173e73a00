#include "ldirac/states.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ldirac/grid.hpp"
#include "ldirac/hamiltonian.hpp"
#include "ldirac/quadrature.hpp"
#include "ldirac/specfun.hpp"

namespace ldirac::states {

namespace {

constexpr cplx kI{0.0, 1.0};

double envelope(const PhysParams& p, double r) { return std::exp(-0.5 * p.q * r * r / p.hbar); }

double norm_arg(const PhysParams& p, double k) { return p.hbar * k * k / (2.0 * p.q); }

void check_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("wave number k must be >= 0");
}

// Relative amplitudes (upper, lower) solving
//   coupling * lower = (E - mc^2) upper,   coupling * upper = (E + mc^2) lower,
// picking whichever of the two proportional forms is better conditioned and
// scaling its largest entry to 1. Both forms vanish only when E = mc^2 = 0,
// where every spinor is an eigenvector; `fallback` is used then.
std::pair<cplx, cplx> coupled_amplitudes(double energy, double rest, double coupling,
                                         std::pair<cplx, cplx> fallback) {
  const double a1 = energy + rest;
  const double b1 = coupling;
  const double a2 = coupling;
  const double b2 = energy - rest;
  const double n1 = std::max(std::abs(a1), std::abs(b1));
  const double n2 = std::max(std::abs(a2), std::abs(b2));
  if (n1 == 0.0 && n2 == 0.0) return fallback;
  if (n1 >= n2) return {a1 / n1, b1 / n1};
  return {a2 / n2, b2 / n2};
}

// exp(-x) f_n(x), with the two leading series terms below the library floor:
// f_n(x) = x^n / (2n+1)!! (1 + x^2 / (2 (2n+3)) + O(x^4)).
double scaled_f_or_limit(int n, double x) {
  if (x >= specfun::kMinModifiedSphericalArg) return specfun::modified_spherical_f_scaled(n, x);
  double lead = 1.0;
  for (int i = 1; i <= n; ++i) lead *= x / (2.0 * i + 1.0);
  return lead * (1.0 + x * x / (2.0 * (2.0 * n + 3.0))) * std::exp(-x);
}

double closed_form_2d(const PhysParams& p, double k, int m, double lower_weight) {
  const double x = norm_arg(p, k);
  const double bracket = specfun::bessel_i_scaled(m, x) + lower_weight * specfun::bessel_i_scaled(m + 1, x);
  return 1.0 / std::sqrt(kPi * p.hbar / p.q * bracket);
}

double closed_form_3d(const PhysParams& p, double k, const spin::AngularQuantumNumbers& qn,
                      double upper_weight, double lower_weight) {
  const double x = norm_arg(p, k);
  const double bracket = upper_weight * scaled_f_or_limit(qn.lambda_prime(), x) +
                         lower_weight * scaled_f_or_limit(qn.lambda(), x);
  const double pref = std::pow(p.hbar / p.q, 1.5) * std::sqrt(kPi) / 4.0;
  return 1.0 / std::sqrt(pref * bracket);
}

void check_norm_range(const PhysParams& p, double k) {
  if (norm_arg(p, k) > kMaxNormalizationArg) {
    throw std::domain_error("normalization: hbar k^2 / 2q exceeds the modified-Bessel range guard");
  }
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

quad::SimpsonOptions tight() {
  quad::SimpsonOptions o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-13;
  o.initial_panels = 64;
  return o;
}

// Angular rule exact for |Psi|^2 of a 3D state (degree <= 2 lambda).
quad::SphereRule sphere_rule_for(const spin::AngularQuantumNumbers& qn) {
  return quad::sphere_rule(qn.lambda() + 2, 2 * qn.lambda() + 4);
}

constexpr int kPhiNodes2D = 8;

double ring_density(const State2D& s, double r) {
  double acc = 0.0;
  const double dphi = 2.0 * kPi / kPhiNodes2D;
  for (int j = 0; j < kPhiNodes2D; ++j) {
    const spin::Spinor2 v = s.polar(r, dphi * j);
    acc += (std::norm(v[0]) + std::norm(v[1])) * dphi;
  }
  return acc;
}

double shell_density(const State3D& s, const quad::SphereRule& rule, double r) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.theta.size(); ++i) {
    for (std::size_t j = 0; j < rule.phi.size(); ++j) {
      const spin::Spinor4 v = s(r, rule.theta[i], rule.phi[j]);
      double d = 0.0;
      for (const cplx& z : v) d += std::norm(z);
      acc += rule.weights[i * rule.phi.size() + j] * d;
    }
  }
  return acc;
}

double uniform_simpson(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  std::vector<double> samples(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) samples[i] = f(a + h * static_cast<double>(i));
  return quad::composite_simpson(samples, h);
}

}  // namespace

double dispersion_energy(const PhysParams& params, double k, EnergyBranch branch) {
  const double pc = params.hbar * k * params.c;
  const double mc2 = params.rest_energy();
  const double ek = std::sqrt(pc * pc + mc2 * mc2);
  return branch == EnergyBranch::positive ? ek : -ek;
}

StateSpec make_spec(int dim, const PhysParams& params, double k, EnergyBranch branch, Spin spin,
                    int m_ang, std::optional<spin::AngularQuantumNumbers> qn) {
  params.validate();
  check_k(k);
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (dim == 2 && params.mass != 0.0) throw std::invalid_argument("the 2D states are massless");
  if (dim == 2 && m_ang < 0) throw std::invalid_argument("negative m_ang is not supported");
  if (dim == 3 && !qn) throw std::invalid_argument("3D states need (j, m)");

  StateSpec s;
  s.dim = dim;
  s.k = k;
  s.branch = branch;
  s.spin = spin;
  s.m_ang = m_ang;
  s.qn = qn;

  const double hb = params.hbar;
  const double c = params.c;
  const double q = params.q;
  const double mc2 = params.rest_energy();
  const double e = dispersion_energy(params, k, branch);
  const double scale = c * std::sqrt(hb * q);
  s.energy = e;
  s.alpha = k * std::sqrt(hb / q);
  s.rho = e / scale;
  s.gamma = std::sqrt(std::max(0.0, e * e - mc2 * mc2)) / scale;
  s.K1 = e * e / (q * hb * c * c) - params.mass * params.mass * c * c / (q * hb) + 1.0;
  s.K2 = e * e / (c * c * hb * hb) + 2.0 * q / hb;
  s.K3 = e * e / (hb * q * c * c) + 2.0;
  s.K4 = (e * e - mc2 * mc2) / (hb * q * c * c) + 3.0;
  return s;
}

// ---------------------------------------------------------------------------
// State1D

State1D::State1D(const PhysParams& params, const StateSpec& spec, cplx upper_amp, cplx lower_amp,
                 AmplitudeMode mode)
    : params_(params), spec_(spec), upper_(upper_amp), lower_(lower_amp), mode_(mode) {
  const double weight = std::norm(upper_) + std::norm(lower_);
  if (weight == 0.0) throw std::invalid_argument("State1D: both amplitudes vanish");
  norm_ = 1.0 / std::sqrt(weight * std::sqrt(kPi * params_.hbar / params_.q));
}

cplx State1D::scalar_factor(double z) const {
  return std::polar(envelope(params_, z), spec_.k * z);
}

spin::Spinor4 State1D::operator()(double z) const {
  const cplx s = norm_ * scalar_factor(z);
  if (spec_.spin == Spin::up) return {upper_ * s, 0.0, lower_ * s, 0.0};
  return {0.0, upper_ * s, 0.0, lower_ * s};
}

State1D State1D::with_norm_const(double n) const {
  State1D out = *this;
  out.norm_ = n;
  return out;
}

State1D construct_1d(const PhysParams& params, double k, Spin spin, EnergyBranch branch,
                     AmplitudeMode mode) {
  const StateSpec spec = make_spec(1, params, k, branch, spin);
  if (mode == AmplitudeMode::paper) return State1D(params, spec, 1.0, 1.0, mode);
  if (mode != AmplitudeMode::derived) throw std::invalid_argument("1D states take paper or derived mode");
  // Spin up couples u1, u3 through +c(p - iqz); spin down through -c(p - iqz).
  // On s(z) the generalized momentum acts as hbar k exactly.
  const double sign = spin == Spin::up ? 1.0 : -1.0;
  const double coupling = sign * params.c * params.hbar * k;
  const double fb = (branch == EnergyBranch::positive ? 1.0 : -1.0) * sign;
  const auto [u, l] = coupled_amplitudes(spec.energy, params.rest_energy(), coupling, {1.0, fb});
  return State1D(params, spec, u, l, mode);
}

// ---------------------------------------------------------------------------
// State2D

State2D::State2D(const PhysParams& params, const StateSpec& spec, cplx lower_amp, AmplitudeMode mode)
    : params_(params), spec_(spec), lower_(lower_amp), mode_(mode) {
  if (spec_.k == 0.0 && spec_.m_ang > 0) {
    throw std::invalid_argument("State2D: k = 0 with m_ang > 0 vanishes identically");
  }
  norm_ = closed_form_2d(params_, spec_.k, spec_.m_ang, std::norm(lower_));
}

double State2D::radial_upper(double r) const {
  return specfun::bessel_j(spec_.m_ang, spec_.k * r) * envelope(params_, r);
}

double State2D::radial_lower(double r) const {
  return specfun::bessel_j(spec_.m_ang + 1, spec_.k * r) * envelope(params_, r);
}

spin::Spinor2 State2D::polar(double r, double phi) const {
  const double g = envelope(params_, r);
  const double kr = spec_.k * r;
  const cplx phase = std::polar(norm_, spec_.m_ang * phi);
  return {phase * specfun::bessel_j(spec_.m_ang, kr) * g,
          phase * lower_ * std::polar(1.0, phi) * specfun::bessel_j(spec_.m_ang + 1, kr) * g};
}

spin::Spinor2 State2D::operator()(double x, double y) const {
  return polar(std::hypot(x, y), std::atan2(y, x));
}

State2D State2D::with_norm_const(double n) const {
  State2D out = *this;
  out.norm_ = n;
  return out;
}

State2D construct_2d(const PhysParams& params, double k, int m_ang, EnergyBranch branch,
                     AmplitudeMode mode, std::size_t fit_grid_points) {
  const StateSpec spec = make_spec(2, params, k, branch, Spin::up, m_ang);
  switch (mode) {
    case AmplitudeMode::paper:
      return State2D(params, spec, 1.0, mode);
    case AmplitudeMode::derived: {
      // p_+ e^{im phi} J_m = i hbar k e^{i(m+1) phi} J_{m+1}, so a = i hbar c k / E.
      const cplx a = spec.energy == 0.0 ? cplx(1.0) : kI * params.hbar * params.c * k / spec.energy;
      return State2D(params, spec, a, mode);
    }
    case AmplitudeMode::auto_fit:
      break;
  }

  // Residual of the eigen-equation is A + a B with
  //   A = H(f, 0) - E(f, 0),  B = H(0, g) - E(0, g);
  // one application of H to (f, g) yields both off-diagonal pieces.
  const State2D unit(params, spec, 1.0, mode);
  const ops::Grid2D grid = ops::Grid2D::square(params.truncation_radius(), fit_grid_points);
  const ops::Field2D both = ops::sample<2>(grid, [&](double x, double y) { return unit(x, y); });
  const ops::Field2D h_both = ops::apply_H_2d(both, params);
  const double e = spec.energy;
  cplx ba = 0.0;
  double bb = 0.0;
  const std::size_t m = h_both.margin;
  for (std::size_t iy = m; iy + m < grid.y.n; ++iy) {
    for (std::size_t ix = m; ix + m < grid.x.n; ++ix) {
      const std::size_t i = grid.index(ix, iy);
      const cplx a0 = -e * both.values[i][0];
      const cplx a1 = h_both.values[i][1];
      const cplx b0 = h_both.values[i][0];
      const cplx b1 = -e * both.values[i][1];
      ba += std::conj(b0) * a0 + std::conj(b1) * a1;
      bb += std::norm(b0) + std::norm(b1);
    }
  }
  const cplx a = bb > 0.0 ? -ba / bb : cplx(1.0);
  return State2D(params, spec, a, mode);
}

// ---------------------------------------------------------------------------
// State3D

State3D::State3D(const PhysParams& params, const StateSpec& spec, cplx upper_amp, cplx lower_amp,
                 AmplitudeMode mode)
    : params_(params),
      spec_(spec),
      upper_(upper_amp),
      lower_(lower_amp),
      mode_(mode),
      y_upper_(spin::spin_angle(*spec.qn, spin::OrbitalBranch::j_minus_half)),
      y_lower_(spin::spin_angle(*spec.qn, spin::OrbitalBranch::j_plus_half)) {
  const bool upper_alive = upper_ != 0.0 && (spec_.k > 0.0 || qn().lambda_prime() == 0);
  const bool lower_alive = lower_ != 0.0 && spec_.k > 0.0;
  if (!upper_alive && !lower_alive) throw std::invalid_argument("State3D: state vanishes identically");
  norm_ = closed_form_3d(params_, spec_.k, qn(), std::norm(upper_), std::norm(lower_));
}

double State3D::radial_u(double r) const {
  return specfun::spherical_j(qn().lambda_prime(), spec_.k * r) * envelope(params_, r);
}

double State3D::radial_v(double r) const {
  return specfun::spherical_j(qn().lambda(), spec_.k * r) * envelope(params_, r);
}

spin::Spinor4 State3D::operator()(double r, double theta, double phi) const {
  const cplx u = norm_ * upper_ * radial_u(r);
  const cplx v = -kI * norm_ * lower_ * radial_v(r);
  const spin::Spinor2 ya = y_upper_(theta, phi);
  const spin::Spinor2 yb = y_lower_(theta, phi);
  return {u * ya[0], u * ya[1], v * yb[0], v * yb[1]};
}

State3D State3D::with_norm_const(double n) const {
  State3D out = *this;
  out.norm_ = n;
  return out;
}

State3D construct_3d(const PhysParams& params, double k, const spin::AngularQuantumNumbers& qn,
                     EnergyBranch branch, AmplitudeMode mode) {
  const StateSpec spec = make_spec(3, params, k, branch, Spin::up, 0, qn);
  if (mode == AmplitudeMode::paper) return State3D(params, spec, 1.0, 1.0, mode);
  if (mode != AmplitudeMode::derived) throw std::invalid_argument("3D states take paper or derived mode");
  // Radial system: hbar c (d/dr + (lambda+1)/r + q r / hbar) v = (E - mc^2) u and
  // hbar c (d/dr - (lambda-1)/r + q r / hbar) u = -(E + mc^2) v; on the regular
  // solutions the two operators act as +k and -k times the partner function.
  const double coupling = params.hbar * params.c * k;
  const double fb = branch == EnergyBranch::positive ? 1.0 : -1.0;
  const auto [u, v] = coupled_amplitudes(spec.energy, params.rest_energy(), coupling, {1.0, fb});
  return State3D(params, spec, u, v, mode);
}

// ---------------------------------------------------------------------------
// Normalization

NormalizationResult normalization(const State1D& s) {
  const PhysParams& p = s.params();
  const State1D unit = s.with_norm_const(1.0);
  const double radius = p.truncation_radius();
  const auto integral = quad::adaptive_simpson(
      [&](double z) {
        const spin::Spinor4 v = unit(z);
        double d = 0.0;
        for (const cplx& c : v) d += std::norm(c);
        return d;
      },
      -radius, radius, tight());
  NormalizationResult out;
  out.quadrature = 1.0 / std::sqrt(integral.value);
  out.closed_form = std::sqrt(0.5 * std::sqrt(p.q / (4.0 * kPi * p.hbar)));
  out.rel_diff = rel_diff(out.closed_form, out.quadrature);
  return out;
}

NormalizationResult normalization(const State2D& s) {
  const PhysParams& p = s.params();
  check_norm_range(p, s.spec().k);
  const State2D unit = s.with_norm_const(1.0);
  const auto integral = quad::adaptive_simpson(
      [&](double r) { return r * ring_density(unit, r); }, 0.0, p.truncation_radius(), tight());
  NormalizationResult out;
  out.quadrature = 1.0 / std::sqrt(integral.value);
  out.closed_form = closed_form_2d(p, s.spec().k, s.spec().m_ang, std::norm(s.lower_amp()));
  out.rel_diff = rel_diff(out.closed_form, out.quadrature);
  return out;
}

NormalizationResult normalization(const State3D& s) {
  const PhysParams& p = s.params();
  check_norm_range(p, s.spec().k);
  const State3D unit = s.with_norm_const(1.0);
  const quad::SphereRule rule = sphere_rule_for(s.qn());
  const auto integral = quad::adaptive_simpson(
      [&](double r) { return r * r * shell_density(unit, rule, r); }, 0.0, p.truncation_radius(),
      tight());
  NormalizationResult out;
  out.quadrature = 1.0 / std::sqrt(integral.value);
  out.closed_form =
      closed_form_3d(p, s.spec().k, s.qn(), std::norm(s.upper_amp()), std::norm(s.lower_amp()));
  out.rel_diff = rel_diff(out.closed_form, out.quadrature);
  return out;
}

NormalizationResult normalization(const ClosedFormState& s) {
  return std::visit([](const auto& st) { return normalization(st); }, s);
}

State1D quadrature_normalized(const State1D& s) { return s.with_norm_const(normalization(s).quadrature); }
State2D quadrature_normalized(const State2D& s) { return s.with_norm_const(normalization(s).quadrature); }
State3D quadrature_normalized(const State3D& s) { return s.with_norm_const(normalization(s).quadrature); }

double probability_integral(const State1D& s, std::size_t panels) {
  const double radius = s.params().truncation_radius();
  return uniform_simpson(
      [&](double z) {
        double d = 0.0;
        for (const cplx& c : s(z)) d += std::norm(c);
        return d;
      },
      -radius, radius, panels);
}

double probability_integral(const State2D& s, std::size_t panels) {
  return uniform_simpson([&](double r) { return r * ring_density(s, r); }, 0.0,
                         s.params().truncation_radius(), panels);
}

double probability_integral(const State3D& s, std::size_t panels) {
  const quad::SphereRule rule = sphere_rule_for(s.qn());
  return uniform_simpson([&](double r) { return r * r * shell_density(s, rule, r); }, 0.0,
                         s.params().truncation_radius(), panels);
}

}  // namespace ldirac::states
