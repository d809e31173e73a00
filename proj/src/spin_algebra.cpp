#include "ldirac/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ldirac/specfun.hpp"

namespace ldirac::spin {

namespace {

constexpr cplx kI{0.0, 1.0};

double max_diff(const Spinor2& a, const Spinor2& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

// Y_{l,mu}, or zero when the projection is out of range.
cplx harmonic_or_zero(int l, int mu, double theta, double phi) {
  if (mu < -l || mu > l) return 0.0;
  return specfun::spherical_harmonic(l, mu, theta, phi);
}

}  // namespace

Matrix2 pauli_x() {
  Matrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix4 block(const Matrix2& tl, const Matrix2& tr, const Matrix2& bl, const Matrix2& br) {
  Matrix4 m;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      m(r, c) = tl(r, c);
      m(r, c + 2) = tr(r, c);
      m(r + 2, c) = bl(r, c);
      m(r + 2, c + 2) = br(r, c);
    }
  }
  return m;
}

const DiracMatrices& dirac_matrices() {
  static const DiracMatrices dm = [] {
    const Matrix2 zero;
    const Matrix2 one = Matrix2::identity();
    DiracMatrices d;
    d.alpha_x = block(zero, pauli_x(), pauli_x(), zero);
    d.alpha_y = block(zero, pauli_y(), pauli_y(), zero);
    d.alpha_z = block(zero, pauli_z(), pauli_z(), zero);
    d.beta = block(one, zero, zero, -1.0 * one);
    d.sigma_z = block(pauli_z(), zero, zero, pauli_z());
    return d;
  }();
  return dm;
}

Matrix2 sigma_dot_rhat(double theta, double phi) {
  const double st = std::sin(theta);
  return cplx(st * std::cos(phi)) * pauli_x() + cplx(st * std::sin(phi)) * pauli_y() +
         cplx(std::cos(theta)) * pauli_z();
}

AngularQuantumNumbers AngularQuantumNumbers::from_twice(int two_j, int two_m) {
  if (two_j < 1 || two_j % 2 == 0) {
    throw std::out_of_range("j must be a positive half-odd-integer (2j = " +
                            std::to_string(two_j) + ")");
  }
  if (two_m % 2 == 0 || two_m < -two_j || two_m > two_j) {
    throw std::out_of_range("m must be half-odd-integer with |m| <= j (2m = " +
                            std::to_string(two_m) + ")");
  }
  if ((two_j + 1) / 2 > specfun::kMaxHarmonicDegree) {
    throw std::out_of_range("j too large for the harmonic table");
  }
  return AngularQuantumNumbers(two_j, two_m);
}

Spinor2 SpinAngleFunction::operator()(double theta, double phi) const {
  return {coeff_up * harmonic_or_zero(l, mu_up(), theta, phi),
          coeff_down * harmonic_or_zero(l, mu_down(), theta, phi)};
}

SpinAngleFunction spin_angle(const AngularQuantumNumbers& qn, OrbitalBranch branch) {
  const double tj = qn.two_j();
  const double tm = qn.two_m();
  if (branch == OrbitalBranch::j_minus_half) {
    // sqrt((j+m)/2j), sqrt((j-m)/2j)
    return {qn, branch, qn.l(branch), std::sqrt((tj + tm) / (2.0 * tj)),
            std::sqrt((tj - tm) / (2.0 * tj))};
  }
  // -sqrt((j-m+1)/(2j+2)), sqrt((j+m+1)/(2j+2))
  return {qn, branch, qn.l(branch), -std::sqrt((tj - tm + 2.0) / (2.0 * (tj + 2.0))),
          std::sqrt((tj + tm + 2.0) / (2.0 * (tj + 2.0)))};
}

Spinor2 spin_angle_eval(const AngularQuantumNumbers& qn, OrbitalBranch branch, double theta,
                        double phi) {
  return spin_angle(qn, branch)(theta, phi);
}

KappaPair sigma_dot_L_eigen(const AngularQuantumNumbers& qn, OrbitalBranch branch) {
  const double rule =
      branch == OrbitalBranch::j_minus_half ? qn.kappa_upper() : qn.kappa_lower();
  const double j = qn.j();
  const double l = qn.l(branch);
  const double casimir = j * (j + 1.0) - l * (l + 1.0) - 0.75;
  return {rule, casimir};
}

Spinor2 HarmonicSpinor::eval(double theta, double phi) const {
  Spinor2 out{};
  for (const auto& [mu, c] : up) out[0] += c * harmonic_or_zero(l, mu, theta, phi);
  for (const auto& [mu, c] : down) out[1] += c * harmonic_or_zero(l, mu, theta, phi);
  return out;
}

HarmonicSpinor to_harmonic_spinor(const SpinAngleFunction& y) {
  HarmonicSpinor s;
  s.l = y.l;
  if (std::abs(y.mu_up()) <= y.l) s.up[y.mu_up()] = y.coeff_up;
  if (std::abs(y.mu_down()) <= y.l) s.down[y.mu_down()] = y.coeff_down;
  return s;
}

HarmonicSpinor apply_sigma_dot_L(const HarmonicSpinor& s) {
  // sigma.L = [[L_z, L_-], [L_+, -L_z]]
  const double ll = s.l * (s.l + 1.0);
  auto raise = [&](int mu) { return std::sqrt(ll - mu * (mu + 1.0)); };
  auto lower = [&](int mu) { return std::sqrt(ll - mu * (mu - 1.0)); };

  HarmonicSpinor out;
  out.l = s.l;
  for (const auto& [mu, c] : s.up) {
    out.up[mu] += static_cast<double>(mu) * c;
    if (mu + 1 <= s.l) out.down[mu + 1] += raise(mu) * c;
  }
  for (const auto& [mu, c] : s.down) {
    out.down[mu] -= static_cast<double>(mu) * c;
    if (mu - 1 >= -s.l) out.up[mu - 1] += lower(mu) * c;
  }
  return out;
}

double sigma_dot_L_ladder_residual(const AngularQuantumNumbers& qn, OrbitalBranch branch,
                                   double theta, double phi) {
  const SpinAngleFunction y = spin_angle(qn, branch);
  const HarmonicSpinor ly = apply_sigma_dot_L(to_harmonic_spinor(y));
  const double kappa = sigma_dot_L_eigen(qn, branch).rule;
  Spinor2 expect = y(theta, phi);
  for (cplx& z : expect) z *= kappa;
  return max_diff(ly.eval(theta, phi), expect);
}

double sigma_dot_rhat_flip_check(const AngularQuantumNumbers& qn, double theta, double phi) {
  const Matrix2 sr = sigma_dot_rhat(theta, phi);
  const Spinor2 lo = spin_angle_eval(qn, OrbitalBranch::j_minus_half, theta, phi);
  const Spinor2 hi = spin_angle_eval(qn, OrbitalBranch::j_plus_half, theta, phi);
  const Spinor2 neg_lo{-lo[0], -lo[1]};
  const Spinor2 neg_hi{-hi[0], -hi[1]};
  return std::max(max_diff(sr * lo, neg_hi), max_diff(sr * hi, neg_lo));
}

}  // namespace ldirac::spin
