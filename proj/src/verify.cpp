#include "ldirac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "ldirac/checks.hpp"
#include "ldirac/quadrature.hpp"
#include "ldirac/spin_algebra.hpp"

namespace ldirac::verify {

namespace {

constexpr double kExact = std::numeric_limits<double>::min();
constexpr std::uint64_t kDirectionSeed = 20240611;
constexpr int kDirections = 100;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(cplx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return "(" + fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") + fmt(std::abs(v.imag())) + "i)";
}

double grid_h(double lo, double hi, std::size_t n) { return (hi - lo) / static_cast<double>(n - 1); }

// Marks a failing printed-convention check as a finding when the derived
// counterpart passes the same test.
void adjudicate(CheckResult& c, bool counterpart_passes, VerificationReport& rep, const std::string& note) {
  if (c.passed || !counterpart_passes) return;
  c.informative = true;
  rep.paper_notes.push_back(note);
}

CheckResult dispersion_check(const PhysParams& p, const states::StateSpec& spec) {
  const double pc = p.hbar * spec.k * p.c;
  const double mc2 = p.mass * p.c * p.c;
  const double e2 = pc * pc + mc2 * mc2;
  const double e = spec.energy;
  const bool sign_ok = (spec.branch == states::EnergyBranch::positive) ? e >= 0.0 : e <= 0.0;
  double res = std::abs(e * e - e2);
  if (e2 > 0.0) res /= e2;
  if (!sign_ok) res = std::max(res, 1.0);
  return make_check("dispersion", res, 4.0 * std::numeric_limits<double>::epsilon(),
                    {{"energy", e}, {"k", spec.k}});
}

CheckResult q_independence_check(const PhysParams& p, const states::StateSpec& spec) {
  double worst = 0.0;
  for (double f : {0.25, 0.5, 2.0, 4.0}) {
    PhysParams alt = p;
    alt.q = p.q * f;
    const states::StateSpec s2 =
        states::make_spec(spec.dim, alt, spec.k, spec.branch, spec.spin, spec.m_ang, spec.qn);
    worst = std::max(worst, std::abs(s2.energy - spec.energy));
  }
  return make_check("dispersion_q_independence", worst, kExact, {{"energy", spec.energy}});
}

std::vector<std::pair<double, double>> random_directions() {
  std::mt19937_64 rng(kDirectionSeed);
  std::uniform_real_distribution<double> cos_t(-0.999, 0.999);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < kDirections; ++i) {
    const double ct = cos_t(rng);
    out.emplace_back(std::acos(ct), phi(rng));
  }
  return out;
}

// ---------------------------------------------------------------------------

void suite_1d(VerificationReport& rep, const ProfileSettings& ps, std::size_t n) {
  const PhysParams& p = rep.params;
  const StateRequest& rq = rep.request;
  const states::State1D s = states::construct_1d(p, rq.k, rq.spin, rq.branch, rq.mode);
  rep.spec = s.spec();
  const double h = grid_h(-p.truncation_radius(), p.truncation_radius(), n);
  const std::map<std::string, double> grid_meta{{"n", static_cast<double>(n)}, {"h", h}};

  {
    auto meta = grid_meta;
    meta["ratio_re"] = s.component_ratio().real();
    meta["ratio_im"] = s.component_ratio().imag();
    CheckResult c = make_check("eigen_residual", ops::eigen_residual_1d(s, n), 1e-8 * ps.tol_scale, meta);
    if (rq.mode == states::AmplitudeMode::paper) {
      const states::State1D d = states::construct_1d(p, rq.k, rq.spin, rq.branch, states::AmplitudeMode::derived);
      const bool d_ok = ops::eigen_residual_1d(d, n) <= c.tolerance;
      adjudicate(c, d_ok, rep,
                 "paper-mode spinor valid only for m=0 on the positive spin-up branch: printed lower/upper "
                 "ratio 1 leaves eigen residual " + fmt(c.residual) + "; the coupled equations require ratio " +
                     fmt(d.component_ratio()));
    }
    rep.checks.push_back(std::move(c));
  }

  rep.checks.push_back(make_check("ode_line", ops::scalar_ode_residual(s, ops::ScalarOde::line, ps.n_ode),
                                  1e-6 * ps.tol_scale, {{"n", static_cast<double>(ps.n_ode)}}));

  const states::NormalizationResult nr = states::normalization(s);
  const states::State1D sn = s.with_norm_const(nr.quadrature);
  rep.checks.push_back(make_check("normalization_integral", std::abs(states::probability_integral(sn) - 1.0),
                                  1e-8, {{"norm_quadrature", nr.quadrature}}));
  {
    CheckResult c = make_check("normalization_printed_constant", nr.rel_diff, 1e-6,
                               {{"norm_closed_form", nr.closed_form}, {"norm_quadrature", nr.quadrature}});
    c.informative = true;
    rep.checks.push_back(std::move(c));
    const double gaussian_n2 = 0.5 * std::sqrt(p.q / (kPi * p.hbar));
    rep.paper_notes.push_back(
        "1D normalization constant: printed N = sqrt(0.5 sqrt(q / (4 pi hbar))) = " + fmt(nr.closed_form) +
        "; quadrature gives N = " + fmt(nr.quadrature) + " (relative difference " + fmt(nr.rel_diff) +
        "); for equal-weight two-component spinors the Gaussian integral gives N^2 = 0.5 sqrt(q / (pi hbar)) = " +
        fmt(gaussian_n2));
  }

  rep.checks.push_back(dispersion_check(p, rep.spec));
  rep.checks.push_back(q_independence_check(p, rep.spec));

  {
    const UncertaintyProduct up = uncertainty_product_1d(sn);
    rep.checks.push_back(make_check("uncertainty_product", std::abs(up.product_over_hbar - 0.5), 1e-6,
                                    {{"dz", up.dz}, {"dp", up.dp}, {"product_over_hbar", up.product_over_hbar}}));
  }

  const ops::Grid1D grid = ops::default_grid_1d(p, n);
  const ops::Field1D psi = ops::sample_state(sn, grid);
  {
    const spin::Matrix4& sz = spin::dirac_matrices().sigma_z;
    const double sign = rq.spin == states::Spin::up ? 1.0 : -1.0;
    double worst = 0.0;
    for (const auto& v : psi.values) {
      const spin::Spinor4 w = sz * v;
      for (std::size_t c = 0; c < 4; ++c) worst = std::max(worst, std::abs(w[c] - sign * v[c]));
    }
    rep.checks.push_back(make_check("spin_projection", worst, kExact, {{"sign", sign}}));
  }
  rep.checks.push_back(make_check("commutator_sigma_z", ops::commutator_sigma_z_1d(p, psi), 1e-12, grid_meta));
  {
    const ops::ScalarField1D f = ops::sample<1>(grid, [&](double z) {
      return std::array<cplx, 1>{s.scalar_factor(z)};
    });
    rep.checks.push_back(make_check("pt_symmetry", ops::pt_transform_check(p, f), 1e-8 * ps.tol_scale, grid_meta));
  }
  {
    PhysParams narrow = p;
    narrow.q = 2.0 * p.q;
    const states::State1D t = states::construct_1d(narrow, rq.k, rq.spin, rq.branch, states::AmplitudeMode::derived);
    const ops::Field1D tf = ops::sample_state(t, grid);
    rep.checks.push_back(
        make_check("similarity_transform", ops::similarity_check(p, tf), 1e-6 * ps.tol_scale, grid_meta));
  }
}

void suite_2d(VerificationReport& rep, const ProfileSettings& ps, std::size_t n) {
  const PhysParams& p = rep.params;
  const StateRequest& rq = rep.request;
  const states::State2D s = states::construct_2d(p, rq.k, rq.m_ang, rq.branch, rq.mode, n);
  rep.spec = s.spec();
  const double h = grid_h(-p.truncation_radius(), p.truncation_radius(), n);
  const cplx a = s.lower_amp();

  {
    std::map<std::string, double> meta{{"n", static_cast<double>(n)}, {"h", h}, {"lower_amp_re", a.real()},
                                       {"lower_amp_im", a.imag()}, {"lower_amp_abs", std::abs(a)}};
    CheckResult c = make_check("eigen_residual", ops::eigen_residual_2d(s, n), 1e-6 * ps.tol_scale, meta);
    if (rq.mode == states::AmplitudeMode::paper) {
      const states::State2D d = states::construct_2d(p, rq.k, rq.m_ang, rq.branch, states::AmplitudeMode::derived);
      const bool d_ok = ops::eigen_residual_2d(d, n) <= c.tolerance;
      adjudicate(c, d_ok, rep,
                 "planar lower amplitude: printed a = 1 leaves eigen residual " + fmt(c.residual) +
                     "; the eigen-equation requires a = " + fmt(d.lower_amp()));
    }
    rep.checks.push_back(std::move(c));
  }
  {
    const ops::JzCheck jz = ops::jz_eigen_check_2d(s, n);
    const double expected = (rq.m_ang + 0.5) * p.hbar;
    rep.checks.push_back(make_check("jz_eigenvalue", jz.residual, 1e-6 * ps.tol_scale,
                                    {{"eigenvalue", jz.eigenvalue}, {"expected", expected}, {"n", static_cast<double>(n)}}));
  }
  rep.checks.push_back(make_check("ode_planar", ops::scalar_ode_residual(s, ops::ScalarOde::planar, ps.n_ode),
                                  1e-6 * ps.tol_scale, {{"n", static_cast<double>(ps.n_ode)}}));

  const double x = p.hbar * rq.k * rq.k / (2.0 * p.q);
  if (x <= states::kMaxNormalizationArg) {
    const states::NormalizationResult nr = states::normalization(s);
    rep.checks.push_back(make_check("normalization_closed_form", nr.rel_diff, 1e-6,
                                    {{"norm_closed_form", nr.closed_form}, {"norm_quadrature", nr.quadrature}, {"x", x}}));
    rep.checks.push_back(make_check("normalization_integral",
                                    std::abs(states::probability_integral(s.with_norm_const(nr.quadrature)) - 1.0), 1e-7,
                                    {{"norm_quadrature", nr.quadrature}}));
  }
  rep.checks.push_back(dispersion_check(p, rep.spec));
  rep.checks.push_back(q_independence_check(p, rep.spec));
}

void suite_3d(VerificationReport& rep, const ProfileSettings& ps, std::size_t n) {
  const PhysParams& p = rep.params;
  const StateRequest& rq = rep.request;
  const spin::AngularQuantumNumbers qn = spin::AngularQuantumNumbers::from_twice(rq.two_j, rq.two_m);
  const states::State3D s = states::construct_3d(p, rq.k, qn, rq.branch, rq.mode);
  rep.spec = s.spec();
  const ops::RadialGrid grid = ops::default_radial_grid(p, n);
  const std::map<std::string, double> grid_meta{{"n", static_cast<double>(n)}, {"h", grid.h()}};
  const double tol_radial = 1e-7 * ps.tol_scale;

  {
    const ops::RadialResiduals rr = ops::radial_residuals_3d(s, grid);
    CheckResult cu = make_check("radial_residual_u", rr.res_u, tol_radial, grid_meta);
    CheckResult cv = make_check("radial_residual_v", rr.res_v, tol_radial, grid_meta);
    if (rq.mode == states::AmplitudeMode::paper) {
      const states::State3D d = states::construct_3d(p, rq.k, qn, rq.branch, states::AmplitudeMode::derived);
      const ops::RadialResiduals dr = ops::radial_residuals_3d(d, grid);
      const std::string note = "3D equal amplitudes hold only for m = 0 on the positive branch: the radial pair "
                               "requires lower/upper amplitude " + fmt(d.lower_amp() / d.upper_amp());
      const std::size_t before = rep.paper_notes.size();
      adjudicate(cu, dr.res_u <= tol_radial, rep, note);
      if (rep.paper_notes.size() == before) adjudicate(cv, dr.res_v <= tol_radial, rep, note);
      else if (!cv.passed && dr.res_v <= tol_radial) cv.informative = true;
    }
    rep.checks.push_back(std::move(cu));
    rep.checks.push_back(std::move(cv));

    const ops::RadialResiduals alt = ops::radial_residuals_3d(s, grid, ops::VEquationReading::alternate);
    CheckResult ca = make_check("radial_residual_v_alternate_reading", alt.res_v, tol_radial, grid_meta);
    ca.informative = true;
    rep.checks.push_back(std::move(ca));
    rep.paper_notes.push_back(
        "u-equation right-hand factor: with -(E - mc^2) / hbar c the radial residual is " + fmt(alt.res_v) +
        ", with -(E + mc^2) / hbar c it is " + fmt(rr.res_v) +
        "; only (E + mc^2) is consistent with E^2 = hbar^2 k^2 c^2 + m^2 c^4" +
        (p.mass == 0.0 ? " (the two readings coincide at m = 0)" : ""));
  }

  rep.checks.push_back(make_check("ode_radial_u",
                                  ops::scalar_ode_residual(s, ops::ScalarOde::radial_upper, ps.n_ode),
                                  1e-6 * ps.tol_scale, {{"n", static_cast<double>(ps.n_ode)}}));
  rep.checks.push_back(make_check("ode_radial_v",
                                  ops::scalar_ode_residual(s, ops::ScalarOde::radial_lower, ps.n_ode),
                                  1e-6 * ps.tol_scale, {{"n", static_cast<double>(ps.n_ode)}}));

  const double x = p.hbar * rq.k * rq.k / (2.0 * p.q);
  if (x <= states::kMaxNormalizationArg) {
    const states::NormalizationResult nr = states::normalization(s);
    rep.checks.push_back(make_check("normalization_closed_form", nr.rel_diff, 1e-6,
                                    {{"norm_closed_form", nr.closed_form}, {"norm_quadrature", nr.quadrature}, {"x", x}}));
    rep.checks.push_back(make_check("normalization_integral",
                                    std::abs(states::probability_integral(s.with_norm_const(nr.quadrature)) - 1.0), 1e-6,
                                    {{"norm_quadrature", nr.quadrature}}));
  }

  {
    double worst = 0.0;
    for (auto b : {spin::OrbitalBranch::j_minus_half, spin::OrbitalBranch::j_plus_half}) {
      const spin::KappaPair kp = spin::sigma_dot_L_eigen(qn, b);
      worst = std::max(worst, std::abs(kp.rule - kp.casimir));
    }
    rep.checks.push_back(make_check("kappa_rule_vs_casimir", worst, kExact));
  }
  {
    double ladder = 0.0;
    double flip = 0.0;
    for (const auto& [theta, phi] : random_directions()) {
      for (auto b : {spin::OrbitalBranch::j_minus_half, spin::OrbitalBranch::j_plus_half}) {
        ladder = std::max(ladder, spin::sigma_dot_L_ladder_residual(qn, b, theta, phi));
      }
      flip = std::max(flip, spin::sigma_dot_rhat_flip_check(qn, theta, phi));
    }
    rep.checks.push_back(make_check("sigma_dot_L_eigen", ladder, 1e-12, {{"directions", kDirections}}));
    rep.checks.push_back(make_check("sigma_dot_rhat_flip", flip, 1e-12, {{"directions", kDirections}}));
  }
  {
    const quad::SphereRule rule = quad::sphere_rule(qn.lambda() + 2, 2 * qn.lambda() + 4);
    double nu = 0.0, nl = 0.0;
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < rule.theta.size(); ++i) {
      for (std::size_t j = 0; j < rule.phi.size(); ++j) {
        const double w = rule.weights[i * rule.phi.size() + j];
        const spin::Spinor2 a = spin::spin_angle_eval(qn, spin::OrbitalBranch::j_minus_half, rule.theta[i], rule.phi[j]);
        const spin::Spinor2 b = spin::spin_angle_eval(qn, spin::OrbitalBranch::j_plus_half, rule.theta[i], rule.phi[j]);
        nu += w * (std::norm(a[0]) + std::norm(a[1]));
        nl += w * (std::norm(b[0]) + std::norm(b[1]));
        overlap += w * (std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
      }
    }
    const double res = std::max({std::abs(nu - 1.0), std::abs(nl - 1.0), std::abs(overlap)});
    rep.checks.push_back(make_check("spin_angle_orthonormality", res, 1e-10));
  }
  rep.checks.push_back(dispersion_check(p, rep.spec));
  rep.checks.push_back(q_independence_check(p, rep.spec));
}

}  // namespace

CheckResult make_check(std::string name, double residual, double tolerance,
                       std::map<std::string, double> metadata) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.passed = residual <= tolerance;
  c.metadata = std::move(metadata);
  return c;
}

ProfileSettings profile_settings(Profile p) {
  if (p == Profile::strict) return {4001, 1001, 8001, 4001, 1.0};
  return {1001, 401, 1001, 1001, 10.0};
}

bool overall_verdict(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.informative || c.passed; });
}

VerificationReport verify_state(const StateRequest& request, const PhysParams& params, Profile profile,
                                std::optional<std::size_t> grid_points) {
  params.validate();
  VerificationReport rep;
  rep.params = params;
  rep.request = request;
  rep.profile = profile;
  const ProfileSettings ps = profile_settings(profile);
  switch (request.dim) {
    case 1:
      suite_1d(rep, ps, grid_points.value_or(ps.n_1d));
      break;
    case 2:
      suite_2d(rep, ps, grid_points.value_or(ps.n_2d));
      break;
    case 3:
      suite_3d(rep, ps, grid_points.value_or(ps.n_radial));
      break;
    default:
      throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
  rep.overall = overall_verdict(rep.checks);
  return rep;
}

UncertaintyProduct uncertainty_product_1d(const states::State1D& s) {
  const PhysParams& p = s.params();
  const double radius = p.truncation_radius();
  quad::SimpsonOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-13;

  auto density = [&](double z) {
    double d = 0.0;
    for (const cplx& c : s(z)) d += std::norm(c);
    return d;
  };
  const double mass_z = quad::adaptive_simpson(density, -radius, radius, opts).value;
  const double mean_z =
      quad::adaptive_simpson([&](double z) { return z * density(z); }, -radius, radius, opts).value / mass_z;
  const double var_z = quad::adaptive_simpson([&](double z) { return (z - mean_z) * (z - mean_z) * density(z); },
                                              -radius, radius, opts)
                           .value /
                       mass_z;

  // Momentum amplitudes by the trapezoidal rule, which converges
  // geometrically for smooth integrands that vanish at the ends.
  constexpr std::size_t kNodes = 2001;
  const ops::Grid1D g = ops::Grid1D::symmetric(radius, kNodes);
  const double h = g.h();
  std::vector<double> zs(kNodes);
  std::vector<spin::Spinor4> vals(kNodes);
  for (std::size_t i = 0; i < kNodes; ++i) {
    zs[i] = g.x(i);
    vals[i] = s(zs[i]);
  }
  const double pref = h / std::sqrt(2.0 * kPi * p.hbar);
  auto mom_density = [&](double pm) {
    spin::Spinor4 phi{};
    for (std::size_t i = 0; i < kNodes; ++i) {
      const double w = (i == 0 || i + 1 == kNodes) ? 0.5 : 1.0;
      const cplx e = std::polar(w, -pm * zs[i] / p.hbar);
      for (std::size_t c = 0; c < 4; ++c) phi[c] += e * vals[i][c];
    }
    double d = 0.0;
    for (const cplx& c : phi) d += std::norm(pref * c);
    return d;
  };
  const double centre = p.hbar * s.spec().k;
  const double half = std::sqrt(60.0 * p.hbar * p.q);
  const double lo = centre - half;
  const double hi = centre + half;
  const double mass_p = quad::adaptive_simpson(mom_density, lo, hi, opts).value;
  const double mean_p =
      quad::adaptive_simpson([&](double pm) { return pm * mom_density(pm); }, lo, hi, opts).value / mass_p;
  const double var_p = quad::adaptive_simpson(
                           [&](double pm) { return (pm - mean_p) * (pm - mean_p) * mom_density(pm); }, lo, hi, opts)
                           .value /
                       mass_p;

  UncertaintyProduct out;
  out.dz = std::sqrt(var_z);
  out.dp = std::sqrt(var_p);
  out.product_over_hbar = out.dz * out.dp / p.hbar;
  return out;
}

SweepResult dispersion_sweep(int dim, const std::vector<double>& k_list, const std::vector<double>& q_list,
                             double mass, Profile profile, double hbar, double c) {
  if (k_list.empty() || q_list.empty()) throw std::invalid_argument("dispersion_sweep: empty k or q list");
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  const ProfileSettings ps = profile_settings(profile);
  SweepResult out;
  out.tolerance = (dim == 1 ? 1e-8 : dim == 2 ? 1e-6 : 1e-7) * ps.tol_scale;
  out.q_independent = true;
  for (double k : k_list) {
    std::optional<double> first;
    for (double q : q_list) {
      PhysParams p{hbar, c, mass, q};
      p.validate();
      SweepRow row;
      row.k = k;
      row.q = q;
      if (dim == 1) {
        const states::State1D s = states::construct_1d(p, k, states::Spin::up, states::EnergyBranch::positive);
        row.energy = s.spec().energy;
        row.residual = ops::eigen_residual_1d(s, ps.n_1d);
      } else if (dim == 2) {
        const states::State2D s =
            states::construct_2d(p, k, 0, states::EnergyBranch::positive, states::AmplitudeMode::auto_fit, ps.n_2d);
        row.energy = s.spec().energy;
        row.residual = ops::eigen_residual_2d(s, ps.n_2d);
      } else {
        const auto qn = spin::AngularQuantumNumbers::from_twice(1, 1);
        const states::State3D s = states::construct_3d(p, k, qn, states::EnergyBranch::positive);
        row.energy = s.spec().energy;
        const ops::RadialResiduals rr = ops::radial_residuals_3d(s, ops::default_radial_grid(p, ps.n_radial));
        row.residual = std::max(rr.res_u, rr.res_v);
      }
      row.pass = row.residual <= out.tolerance;
      if (!first) first = row.energy;
      else if (*first != row.energy) out.q_independent = false;
      out.rows.push_back(row);
    }
  }
  out.all_pass = out.q_independent &&
                 std::all_of(out.rows.begin(), out.rows.end(), [](const SweepRow& r) { return r.pass; });
  return out;
}

ConvergenceResult convergence_study(const std::function<ConvergencePoint(std::size_t)>& check,
                                    const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 3) throw std::invalid_argument("convergence_study: need at least 3 grid sizes");
  ConvergenceResult out;
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    ConvergencePoint pt = check(n);
    pt.n = n;
    out.points.push_back(pt);
    if (std::isfinite(pt.residual) && pt.residual >= kRoundingFloor && pt.h > 0.0) {
      xs.push_back(std::log(pt.h));
      ys.push_back(std::log(pt.residual));
    }
  }
  out.used_points = xs.size();
  if (xs.empty()) {
    out.exact = true;
    return out;
  }
  if (xs.size() < 3) throw std::domain_error("convergence_study: fewer than 3 residuals above the rounding floor");
  const double nx = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= nx;
  my /= nx;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.order = sxy / sxx;
  return out;
}

}  // namespace ldirac::verify
