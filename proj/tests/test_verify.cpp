#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ldirac/checks.hpp"
#include "ldirac/report_io.hpp"
#include "ldirac/verify.hpp"

using namespace ldirac;
using namespace ldirac::verify;
using states::AmplitudeMode;
using states::EnergyBranch;
using states::Spin;

namespace {

const CheckResult& find(const VerificationReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

StateRequest request_1d(double k, AmplitudeMode mode = AmplitudeMode::derived) {
  StateRequest r;
  r.dim = 1;
  r.k = k;
  r.mode = mode;
  return r;
}

}  // namespace

TEST_CASE("check results and the overall verdict") {
  CHECK(make_check("a", 1e-9, 1e-8).passed);
  CHECK(make_check("a", 1e-8, 1e-8).passed);
  CHECK_FALSE(make_check("a", 2e-8, 1e-8).passed);
  CHECK_FALSE(make_check("a", std::nan(""), 1.0).passed);
  std::vector<CheckResult> v{make_check("a", 0.0, 1.0), make_check("b", 2.0, 1.0)};
  CHECK_FALSE(overall_verdict(v));
  v[1].informative = true;
  CHECK(overall_verdict(v));
}

TEST_CASE("strict 1D derived suite passes") {
  PhysParams p;
  const VerificationReport r = verify_state(request_1d(1.0), p, Profile::strict);
  CHECK(r.overall);
  for (const CheckResult& c : r.checks) {
    CAPTURE(c.name);
    CHECK((c.passed || c.informative));
    CHECK(c.tolerance > 0.0);
  }
  CHECK(find(r, "eigen_residual").metadata.at("n") == 4001.0);
  CHECK(find(r, "normalization_printed_constant").informative);
  CHECK_FALSE(r.paper_notes.empty());
}

TEST_CASE("1D paper spinor with mass is flagged as a finding") {
  PhysParams p;
  p.mass = 1.0;
  const VerificationReport r = verify_state(request_1d(1.0, AmplitudeMode::paper), p, Profile::fast);
  const CheckResult& e = find(r, "eigen_residual");
  CHECK_FALSE(e.passed);
  CHECK(e.informative);
  CHECK(r.overall);
  bool noted = false;
  for (const std::string& n : r.paper_notes) noted = noted || n.find("valid only for m=0") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("strict 2D suite with m = 3") {
  PhysParams p;
  p.q = 0.5;
  StateRequest rq;
  rq.dim = 2;
  rq.k = 2.0;
  rq.m_ang = 3;
  rq.mode = AmplitudeMode::auto_fit;
  const VerificationReport r = verify_state(rq, p, Profile::strict);
  CHECK(r.overall);
  const CheckResult& jz = find(r, "jz_eigenvalue");
  CHECK(jz.passed);
  CHECK(std::abs(jz.metadata.at("eigenvalue") - 3.5) <= 1e-6);
  CHECK(std::abs(find(r, "eigen_residual").metadata.at("lower_amp_abs") - 1.0) <= 1e-4);
}

TEST_CASE("3D suites for both branches and masses") {
  for (double m : {0.0, 1.0})
    for (auto b : {EnergyBranch::positive, EnergyBranch::negative}) {
      PhysParams p;
      p.mass = m;
      StateRequest rq;
      rq.dim = 3;
      rq.k = 1.0;
      rq.two_j = 3;
      rq.two_m = 1;
      rq.branch = b;
      const VerificationReport r = verify_state(rq, p, Profile::fast);
      CHECK(r.overall);
      CHECK(find(r, "radial_residual_v_alternate_reading").informative);
    }
}

TEST_CASE("verification propagates construction errors") {
  PhysParams p;
  p.mass = 1.0;
  StateRequest rq;
  rq.dim = 2;
  CHECK_THROWS_AS(verify_state(rq, p, Profile::fast), std::invalid_argument);
  p.q = -1.0;
  CHECK_THROWS(verify_state(request_1d(1.0), p, Profile::fast));
}

TEST_CASE("uncertainty product") {
  PhysParams p;
  const states::State1D g = states::construct_1d(p, 0.0, Spin::up, EnergyBranch::positive);
  const UncertaintyProduct u0 = uncertainty_product_1d(g);
  CHECK(std::abs(u0.dz - std::sqrt(0.5)) <= 1e-10);
  CHECK(std::abs(u0.product_over_hbar - 0.5) <= 1e-6);
  const UncertaintyProduct u5 = uncertainty_product_1d(states::construct_1d(p, 5.0, Spin::up, EnergyBranch::positive));
  CHECK(std::abs(u5.product_over_hbar - 0.5) <= 1e-6);
  PhysParams a, b;
  a.q = 10.0;
  b.q = 0.1;
  const double dza = uncertainty_product_1d(states::construct_1d(a, 1.0, Spin::up, EnergyBranch::positive)).dz;
  const double dzb = uncertainty_product_1d(states::construct_1d(b, 1.0, Spin::up, EnergyBranch::positive)).dz;
  CHECK(std::abs(dza / dzb - 0.1) <= 1e-10);
}

TEST_CASE("dispersion sweep") {
  const SweepResult s = dispersion_sweep(1, {1.0}, {0.1, 1.0, 10.0}, 0.0);
  REQUIRE(s.rows.size() == 3);
  for (const SweepRow& r : s.rows) CHECK(r.energy == 1.0);
  CHECK(s.q_independent);
  CHECK(s.all_pass);
  const SweepResult rest = dispersion_sweep(1, {0.0}, {1.0}, 1.0, Profile::fast);
  CHECK(rest.rows[0].energy == 1.0);
  const SweepResult pyth = dispersion_sweep(1, {3.0}, {1.0}, 4.0, Profile::fast);
  CHECK(pyth.rows[0].energy == 5.0);
  const SweepResult three = dispersion_sweep(3, {0.0, 1.0}, {0.5, 2.0}, 1.0, Profile::fast);
  REQUIRE(three.rows.size() == 4);
  CHECK(three.rows[0].k == 0.0);
  CHECK(three.rows[1].q == 2.0);
  CHECK(three.q_independent);
  CHECK(three.all_pass);
  CHECK_THROWS_AS(dispersion_sweep(1, {}, {1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dispersion_sweep(1, {1.0}, {}, 0.0), std::invalid_argument);
}

TEST_CASE("convergence study on synthetic and real residuals") {
  const std::vector<std::size_t> sizes{501, 1001, 2001, 4001};
  auto synthetic = [](std::size_t n) {
    const double h = 1.0 / static_cast<double>(n - 1);
    return ConvergencePoint{n, h, 3.0 * std::pow(h, 4)};
  };
  CHECK(std::abs(convergence_study(synthetic, sizes).order - 4.0) <= 1e-9);

  auto exact = [](std::size_t n) { return ConvergencePoint{n, 1.0 / static_cast<double>(n), 1e-16}; };
  const ConvergenceResult e = convergence_study(exact, sizes);
  CHECK(e.exact);
  CHECK(e.used_points == 0);

  auto floors_late = [](std::size_t n) {
    const double h = 1.0 / static_cast<double>(n - 1);
    return ConvergencePoint{n, h, n > 1001 ? 1e-15 : h};
  };
  CHECK_THROWS_AS(convergence_study(floors_late, sizes), std::domain_error);
  CHECK_THROWS_AS(convergence_study(synthetic, {501, 1001}), std::invalid_argument);

  PhysParams p;
  const states::State1D s = states::construct_1d(p, 1.0, Spin::up, EnergyBranch::positive);
  const ConvergenceResult c = convergence_study(
      [&](std::size_t n) {
        return ConvergencePoint{n, ops::default_grid_1d(p, n).h(), ops::eigen_residual_1d(s, n)};
      },
      sizes);
  CHECK(std::abs(c.order - 4.0) <= 0.2);
  CHECK(c.used_points == 4);
}

TEST_CASE("reports are deterministic") {
  PhysParams p;
  p.mass = 0.5;
  const VerificationReport a = verify_state(request_1d(2.0), p, Profile::fast);
  const VerificationReport b = verify_state(request_1d(2.0), p, Profile::fast);
  CHECK(io::report_json(a) == io::report_json(b));
  CHECK(io::report_csv(a) == io::report_csv(b));
  const io::ReportValidation v = io::validate_report_json(io::report_json(a));
  CHECK(v.well_formed);
  CHECK(v.consistent);
  CHECK(v.overall == a.overall);
}

TEST_CASE("profile settings") {
  const ProfileSettings f = profile_settings(Profile::fast);
  const ProfileSettings s = profile_settings(Profile::strict);
  CHECK(f.tol_scale == 10.0);
  CHECK(s.tol_scale == 1.0);
  CHECK(s.n_1d == 4001);
  CHECK(s.n_radial == 8001);
  CHECK(f.n_1d == 1001);
}
