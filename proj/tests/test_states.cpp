#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ldirac/quadrature.hpp"
#include "ldirac/specfun.hpp"
#include "ldirac/states.hpp"

using namespace ldirac;
using namespace ldirac::states;
using spin::AngularQuantumNumbers;

namespace {

constexpr cplx kI{0.0, 1.0};

PhysParams massive(double m) {
  PhysParams p;
  p.mass = m;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("1D derived lower/upper ratio") {
  const State1D a = construct_1d(PhysParams{}, 1.0, Spin::up, EnergyBranch::positive);
  CHECK(std::abs(a.component_ratio() - 1.0) <= 1e-15);
  const State1D b = construct_1d(massive(2.0), 0.0, Spin::up, EnergyBranch::positive);
  CHECK(std::abs(b.component_ratio()) == 0.0);
  const State1D c = construct_1d(massive(1.0), 1.0, Spin::up, EnergyBranch::positive);
  CHECK(std::abs(c.component_ratio() - 1.0 / (std::sqrt(2.0) + 1.0)) <= 1e-15);
  const State1D paper = construct_1d(massive(1.0), 1.0, Spin::up, EnergyBranch::positive, AmplitudeMode::paper);
  CHECK(paper.component_ratio() == cplx(1.0));
}

TEST_CASE("1D ratio solves the first-order coupling for arbitrary parameters") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int n = 0; n < 50; ++n) {
    PhysParams p;
    p.hbar = u(rng);
    p.c = u(rng);
    p.mass = u(rng);
    p.q = u(rng);
    const double k = u(rng);
    const State1D s = construct_1d(p, k, Spin::up, EnergyBranch::positive);
    const double e = s.spec().energy;
    // (E + mc^2) u3 = c hbar k u1
    CHECK(std::abs((e + p.rest_energy()) * s.component_ratio() - p.c * p.hbar * k) <= 1e-12 * e);
  }
}

TEST_CASE("construction errors") {
  PhysParams bad;
  bad.q = 0.0;
  CHECK_THROWS_AS(construct_1d(bad, 1.0, Spin::up, EnergyBranch::positive), std::invalid_argument);
  bad.q = -1.0;
  CHECK_THROWS_AS(construct_3d(bad, 1.0, AngularQuantumNumbers::from_twice(1, 1), EnergyBranch::positive),
                  std::invalid_argument);
  CHECK_THROWS_AS(construct_1d(PhysParams{}, -1.0, Spin::up, EnergyBranch::positive), std::invalid_argument);
  CHECK_THROWS_AS(construct_2d(massive(1.0), 1.0, 0, EnergyBranch::positive), std::invalid_argument);
  CHECK_THROWS_AS(construct_2d(PhysParams{}, 1.0, -1, EnergyBranch::positive), std::invalid_argument);
  CHECK_THROWS_AS(construct_1d(PhysParams{}, 1.0, Spin::up, EnergyBranch::positive, AmplitudeMode::auto_fit),
                  std::invalid_argument);
  CHECK_THROWS_AS(AngularQuantumNumbers::from_twice(3, 5), std::out_of_range);
}

TEST_CASE("stored constants satisfy the dispersion relation and scaled identities") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (int n = 0; n < 100; ++n) {
    PhysParams p;
    p.hbar = u(rng);
    p.c = u(rng);
    p.mass = (n % 3 == 0) ? 0.0 : u(rng);
    p.q = u(rng);
    const double k = u(rng);
    const int dim = (p.mass == 0.0) ? 1 + n % 3 : ((n % 2) ? 1 : 3);
    const auto branch = (n % 2) ? EnergyBranch::negative : EnergyBranch::positive;
    const StateSpec s = make_spec(dim, p, k, branch, Spin::up, 0,
                                  dim == 3 ? std::optional(AngularQuantumNumbers::from_twice(1, 1)) : std::nullopt);
    const double e2 = p.hbar * p.hbar * k * k * p.c * p.c + p.mass * p.mass * std::pow(p.c, 4);
    CHECK(rel(s.energy * s.energy, e2) <= 4.0 * 2.220446049250313e-16);
    CHECK((s.energy > 0) == (branch == EnergyBranch::positive));
    CHECK(rel(s.K1, s.alpha * s.alpha + 1.0) <= 1e-13);
    CHECK(rel(s.K3, s.rho * s.rho + 2.0) <= 1e-13);
    CHECK(rel(s.K4, s.gamma * s.gamma + 3.0) <= 1e-13);
    CHECK(rel(s.K2, s.energy * s.energy / (p.c * p.c * p.hbar * p.hbar) + 2.0 * p.q / p.hbar) <= 1e-15);
  }
}

TEST_CASE("energy does not depend on q") {
  for (double k : {0.0, 0.5, 3.0}) {
    PhysParams a = massive(0.7), b = massive(0.7);
    a.q = 0.1;
    b.q = 10.0;
    CHECK(construct_1d(a, k, Spin::down, EnergyBranch::negative).spec().energy ==
          construct_1d(b, k, Spin::down, EnergyBranch::negative).spec().energy);
    const auto qn = AngularQuantumNumbers::from_twice(1, -1);
    CHECK(construct_3d(a, k, qn, EnergyBranch::positive).spec().energy ==
          construct_3d(b, k, qn, EnergyBranch::positive).spec().energy);
  }
  PhysParams a, b;
  b.q = 7.0;
  CHECK(construct_2d(a, 2.0, 1, EnergyBranch::positive, AmplitudeMode::derived).spec().energy ==
        construct_2d(b, 2.0, 1, EnergyBranch::positive, AmplitudeMode::derived).spec().energy);
  CHECK(construct_2d(a, 2.0, 1, EnergyBranch::positive, AmplitudeMode::derived).spec().energy == 2.0);
}

TEST_CASE("Sigma_z eigenvalue is exact pointwise") {
  const spin::Matrix4& sz = spin::dirac_matrices().sigma_z;
  for (auto branch : {EnergyBranch::positive, EnergyBranch::negative}) {
    const State1D up = construct_1d(massive(0.5), 1.3, Spin::up, branch);
    const State1D dn = construct_1d(massive(0.5), 1.3, Spin::down, branch);
    for (double z = -5.0; z <= 5.0; z += 0.37) {
      const spin::Spinor4 a = up(z), b = dn(z);
      const spin::Spinor4 sa = sz * a, sb = sz * b;
      for (int c = 0; c < 4; ++c) {
        CHECK(sa[c] == a[c]);
        CHECK(sb[c] == -b[c]);
      }
    }
  }
}

TEST_CASE("1D density is an exact Gaussian") {
  PhysParams p = massive(0.3);
  p.q = 1.7;
  p.hbar = 0.8;
  const State1D s = construct_1d(p, 2.5, Spin::up, EnergyBranch::positive);
  // Least-squares slope of log density against z^2.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double z = -4.0; z <= 4.0; z += 0.05, ++n) {
    const spin::Spinor4 v = s(z);
    double d = 0.0;
    for (const cplx& x : v) d += std::norm(x);
    const double x = z * z, y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope + p.q / p.hbar) <= 1e-10);
}

TEST_CASE("every component decays with the Gaussian envelope") {
  const State3D s = construct_3d(massive(0.4), 1.0, AngularQuantumNumbers::from_twice(3, 1), EnergyBranch::positive);
  const State2D t = construct_2d(PhysParams{}, 1.0, 2, EnergyBranch::positive, AmplitudeMode::derived);
  for (double r : {6.0, 8.0, 10.0}) {
    const double env = std::exp(-r * r / 2.0);
    for (const cplx& v : s(r, 0.7, 0.2)) CHECK(std::abs(v) <= s.norm_const() * env);
    for (const cplx& v : t.polar(r, 0.7)) CHECK(std::abs(v) <= t.norm_const() * env);
  }
}

TEST_CASE("2D values at the origin and lower amplitude modes") {
  const State2D s = construct_2d(PhysParams{}, 1.0, 0, EnergyBranch::positive, AmplitudeMode::paper);
  const spin::Spinor2 v = s(0.0, 0.0);
  CHECK(std::abs(v[0] - s.norm_const()) <= 1e-15);
  CHECK(v[1] == 0.0);
  CHECK(s.lower_amp() == cplx(1.0));
  const State2D d = construct_2d(PhysParams{}, 1.0, 0, EnergyBranch::positive, AmplitudeMode::derived);
  CHECK(std::abs(d.lower_amp() - kI) <= 1e-15);
  const State2D dn = construct_2d(PhysParams{}, 1.0, 0, EnergyBranch::negative, AmplitudeMode::derived);
  CHECK(std::abs(dn.lower_amp() + kI) <= 1e-15);
  const State2D a = construct_2d(PhysParams{}, 1.0, 0, EnergyBranch::positive, AmplitudeMode::auto_fit);
  CHECK(std::abs(std::abs(a.lower_amp()) - 1.0) <= 1e-4);
  CHECK(std::abs(a.lower_amp() - kI) <= 1e-4);
  CHECK_THROWS_AS(construct_2d(PhysParams{}, 0.0, 1, EnergyBranch::positive), std::invalid_argument);
}

TEST_CASE("2D polar and Cartesian evaluation agree") {
  const State2D s = construct_2d(PhysParams{}, 1.4, 3, EnergyBranch::positive, AmplitudeMode::derived);
  for (double r : {0.3, 1.0, 2.2})
    for (double phi : {0.1, 1.9, 4.4}) {
      const spin::Spinor2 a = s.polar(r, phi);
      const spin::Spinor2 b = s(r * std::cos(phi), r * std::sin(phi));
      CHECK(std::abs(a[0] - b[0]) <= 1e-14);
      CHECK(std::abs(a[1] - b[1]) <= 1e-14);
      const double g = std::exp(-r * r / 2.0);
      CHECK(std::abs(a[0] - s.norm_const() * std::polar(1.0, 3 * phi) * specfun::bessel_j(3, 1.4 * r) * g) <=
            1e-14);
    }
}

TEST_CASE("3D j = 3/2, m = 3/2 spinor components") {
  const PhysParams p;
  const State3D s = construct_3d(p, 1.2, AngularQuantumNumbers::from_twice(3, 3), EnergyBranch::positive,
                                 AmplitudeMode::paper);
  const double n = s.norm_const();
  for (double r : {0.4, 1.3, 2.5})
    for (double th : {0.3, 1.2, 2.8}) {
      const double ph = 0.9;
      const double g = std::exp(-r * r / 2.0);
      const double j1 = std::sph_bessel(1, 1.2 * r), j2 = std::sph_bessel(2, 1.2 * r);
      const spin::Spinor4 v = s(r, th, ph);
      CHECK(std::abs(v[0] - n * g * j1 * specfun::spherical_harmonic(1, 1, th, ph)) <= 1e-14);
      CHECK(std::abs(v[1]) <= 1e-15);
      CHECK(std::abs(v[2] - kI * n * g * j2 * std::sqrt(0.2) * specfun::spherical_harmonic(2, 1, th, ph)) <= 1e-14);
      CHECK(std::abs(v[3] + kI * n * g * j2 * std::sqrt(0.8) * specfun::spherical_harmonic(2, 2, th, ph)) <= 1e-14);
    }
}

TEST_CASE("3D origin values and amplitudes") {
  const State3D s = construct_3d(PhysParams{}, 1.0, AngularQuantumNumbers::from_twice(3, 1), EnergyBranch::positive);
  for (const cplx& v : s(0.0, 0.4, 0.1)) CHECK(v == 0.0);
  const State3D h = construct_3d(PhysParams{}, 1.0, AngularQuantumNumbers::from_twice(1, 1), EnergyBranch::positive);
  CHECK(std::abs(h(0.0, 0.0, 0.0)[0]) > 0.0);
  // Massless + branch: derived amplitudes coincide with the printed ones.
  CHECK(std::abs(h.upper_amp() - h.lower_amp()) <= 1e-15);
  const State3D m = construct_3d(massive(1.0), 1.0, AngularQuantumNumbers::from_twice(1, 1), EnergyBranch::positive);
  const double e = std::sqrt(2.0);
  CHECK(std::abs(m.lower_amp() / m.upper_amp() - 1.0 / (e + 1.0)) <= 1e-15);
  const State3D rest = construct_3d(massive(1.0), 0.0, AngularQuantumNumbers::from_twice(1, 1), EnergyBranch::positive);
  CHECK(rest.lower_amp() == 0.0);
}

TEST_CASE("normalization closed forms against quadrature") {
  const NormalizationResult n2 = normalization(construct_2d(PhysParams{}, 1.0, 0, EnergyBranch::positive));
  CHECK(n2.rel_diff <= 1e-6);
  const NormalizationResult n2b =
      normalization(construct_2d(PhysParams{}, 2.0, 3, EnergyBranch::positive, AmplitudeMode::derived));
  CHECK(n2b.rel_diff <= 1e-6);
  for (int tm : {3, 1, -1, -3}) {
    const State3D s = construct_3d(PhysParams{}, 1.0, AngularQuantumNumbers::from_twice(3, tm), EnergyBranch::positive);
    CHECK(normalization(s).rel_diff <= 1e-6);
  }
  const NormalizationResult n3m = normalization(
      construct_3d(massive(0.8), 1.5, AngularQuantumNumbers::from_twice(5, 1), EnergyBranch::negative));
  CHECK(n3m.rel_diff <= 1e-6);
}

TEST_CASE("1D printed constant differs from the Gaussian integral by 1/sqrt(2)") {
  for (double q : {0.1, 1.0, 10.0}) {
    PhysParams p;
    p.q = q;
    const NormalizationResult r = normalization(construct_1d(p, 1.0, Spin::up, EnergyBranch::positive));
    // Oracle: two unit components and the integral sqrt(pi hbar / q).
    const double oracle = 1.0 / std::sqrt(2.0 * std::sqrt(kPi * p.hbar / q));
    CHECK(rel(r.quadrature, oracle) <= 1e-10);
    CHECK(std::abs(r.rel_diff - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-8);
  }
}

TEST_CASE("normalization range guard") {
  PhysParams p;
  p.q = 0.01;
  CHECK_THROWS_AS(normalization(construct_2d(p, 2.0, 0, EnergyBranch::positive, AmplitudeMode::derived)),
                  std::domain_error);
  CHECK_THROWS_AS(normalization(construct_3d(p, 2.0, AngularQuantumNumbers::from_twice(1, 1), EnergyBranch::positive)),
                  std::domain_error);
  CHECK_NOTHROW(normalization(construct_1d(p, 5.0, Spin::up, EnergyBranch::positive)));
}

TEST_CASE("quadrature-normalized states integrate to one") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uk(0.0, 3.0), uq(0.3, 3.0), um(0.0, 1.5);
  for (int n = 0; n < 6; ++n) {
    PhysParams p;
    p.q = uq(rng);
    p.mass = um(rng);
    const double k = uk(rng);
    const State1D s1 = quadrature_normalized(construct_1d(p, k, n % 2 ? Spin::down : Spin::up, EnergyBranch::positive));
    CHECK(std::abs(probability_integral(s1) - 1.0) <= 1e-8);
    const State3D s3 = quadrature_normalized(
        construct_3d(p, k, AngularQuantumNumbers::from_twice(1 + 2 * (n % 3), 1), EnergyBranch::negative));
    CHECK(std::abs(probability_integral(s3) - 1.0) <= 1e-6);
    p.mass = 0.0;
    const State2D s2 =
        quadrature_normalized(construct_2d(p, k + 0.1, n % 4, EnergyBranch::positive, AmplitudeMode::derived));
    CHECK(std::abs(probability_integral(s2) - 1.0) <= 1e-7);
  }
}

TEST_CASE("closed-form constants already normalize 2D and 3D states") {
  CHECK(std::abs(probability_integral(construct_2d(PhysParams{}, 1.0, 1, EnergyBranch::positive)) - 1.0) <= 1e-7);
  CHECK(std::abs(probability_integral(construct_3d(PhysParams{}, 1.0, AngularQuantumNumbers::from_twice(3, 3),
                                                   EnergyBranch::positive)) -
                 1.0) <= 1e-6);
  CHECK(std::abs(probability_integral(construct_1d(massive(1.0), 1.0, Spin::up, EnergyBranch::positive)) - 1.0) <=
        1e-8);
}

TEST_CASE("small radii use the series limit of the modified spherical function") {
  PhysParams p;
  p.q = 1.0;
  const State3D s = construct_3d(p, 1e-4, AngularQuantumNumbers::from_twice(3, 1), EnergyBranch::positive);
  const NormalizationResult r = normalization(s);
  CHECK(std::isfinite(r.closed_form));
  CHECK(r.rel_diff <= 1e-6);
}
