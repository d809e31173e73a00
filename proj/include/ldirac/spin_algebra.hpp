#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <complex>
#include <map>

#include "ldirac/params.hpp"

namespace ldirac::spin {

using Spinor2 = std::array<cplx, 2>;
using Spinor4 = std::array<cplx, 4>;

/// Dense N x N complex matrix with value semantics.
template <std::size_t N>
class SquareMatrix {
 public:
  using Vector = std::array<cplx, N>;

  SquareMatrix() = default;

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  friend SquareMatrix operator+(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.a_[i] = x.a_[i] + y.a_[i];
    return out;
  }
  friend SquareMatrix operator-(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }
  friend SquareMatrix operator*(cplx s, const SquareMatrix& x) {
    SquareMatrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.a_[i] = s * x.a_[i];
    return out;
  }
  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t c = 0; c < N; ++c) out(r, c) += x(r, k) * y(k, c);
    return out;
  }
  Vector operator*(const Vector& v) const {
    Vector out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  /// Largest entry modulus.
  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : a_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  std::array<cplx, N * N> a_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();

/// 4x4 matrix from 2x2 blocks [[tl, tr], [bl, br]].
Matrix4 block(const Matrix2& tl, const Matrix2& tr, const Matrix2& bl, const Matrix2& br);

struct DiracMatrices {
  Matrix4 alpha_x;
  Matrix4 alpha_y;
  Matrix4 alpha_z;
  Matrix4 beta;
  /// Spin projection diag(sigma_z, sigma_z).
  Matrix4 sigma_z;
};

/// Standard (Dirac-Pauli) representation.
const DiracMatrices& dirac_matrices();

/// sigma . r_hat for the direction (theta, phi).
Matrix2 sigma_dot_rhat(double theta, double phi);

/// Which orbital partner of a given j: l = j - 1/2 or l = j + 1/2.
enum class OrbitalBranch { j_minus_half, j_plus_half };

/// Total angular momentum j and projection m, both half-odd-integers,
/// stored doubled so all bookkeeping stays in integers.
class AngularQuantumNumbers {
 public:
  /// Throws std::out_of_range unless two_j is odd and positive, two_m is
  /// odd, |two_m| <= two_j, and j + 1/2 stays within the harmonic table.
  static AngularQuantumNumbers from_twice(int two_j, int two_m);

  int two_j() const { return two_j_; }
  int two_m() const { return two_m_; }
  double j() const { return 0.5 * two_j_; }
  double m() const { return 0.5 * two_m_; }

  int lambda() const { return (two_j_ + 1) / 2; }
  int lambda_prime() const { return lambda() - 1; }
  /// sigma.L eigenvalue (units of hbar) on l = j - 1/2.
  int kappa_upper() const { return lambda() - 1; }
  /// sigma.L eigenvalue (units of hbar) on l = j + 1/2.
  int kappa_lower() const { return -(lambda() + 1); }

  int l(OrbitalBranch b) const {
    return b == OrbitalBranch::j_minus_half ? lambda_prime() : lambda();
  }

  friend bool operator==(const AngularQuantumNumbers&, const AngularQuantumNumbers&) = default;

 private:
  AngularQuantumNumbers(int two_j, int two_m) : two_j_(two_j), two_m_(two_m) {}
  int two_j_;
  int two_m_;
};

/// Two-component spin-angle function y^{jm}_l:
///   ( coeff_up * Y_{l, m-1/2},  coeff_down * Y_{l, m+1/2} )
struct SpinAngleFunction {
  AngularQuantumNumbers qn;
  OrbitalBranch branch;
  int l;
  double coeff_up;
  double coeff_down;

  int mu_up() const { return (qn.two_m() - 1) / 2; }
  int mu_down() const { return (qn.two_m() + 1) / 2; }

  Spinor2 operator()(double theta, double phi) const;
};

SpinAngleFunction spin_angle(const AngularQuantumNumbers& qn, OrbitalBranch branch);

Spinor2 spin_angle_eval(const AngularQuantumNumbers& qn, OrbitalBranch branch, double theta,
                        double phi);

/// sigma.L eigenvalue on y^{jm}_l in units of hbar, from the kappa rule and
/// from (J^2 - L^2 - S^2) / hbar^2. The two are expected to agree exactly.
struct KappaPair {
  double rule;
  double casimir;
};

KappaPair sigma_dot_L_eigen(const AngularQuantumNumbers& qn, OrbitalBranch branch);

/// Two-spinor whose components are finite sums over Y_{l, mu} of one degree.
struct HarmonicSpinor {
  int l = 0;
  std::map<int, cplx> up;
  std::map<int, cplx> down;

  Spinor2 eval(double theta, double phi) const;
};

HarmonicSpinor to_harmonic_spinor(const SpinAngleFunction& y);

/// sigma.L applied through L_z and the ladder operators (hbar = 1).
HarmonicSpinor apply_sigma_dot_L(const HarmonicSpinor& s);

/// max |(sigma.L) y - kappa y| at one direction, with sigma.L from ladder algebra.
double sigma_dot_L_ladder_residual(const AngularQuantumNumbers& qn, OrbitalBranch branch,
                                   double theta, double phi);

/// max over both branches of |(sigma.r_hat) y_{j +- 1/2} + y_{j -+ 1/2}|.
double sigma_dot_rhat_flip_check(const AngularQuantumNumbers& qn, double theta, double phi);

}  // namespace ldirac::spin
