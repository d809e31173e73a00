#include "ldirac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldirac/params.hpp"

namespace ldirac::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBig = 1.0e250;
constexpr double kSmall = 1.0e-250;

void check_order(int order, const char* fn) {
  if (order < 0 || order > kMaxBesselOrder) {
    throw std::domain_error(std::string(fn) + ": order " + std::to_string(order) +
                            " outside [0, " + std::to_string(kMaxBesselOrder) + "]");
  }
}

void check_nonnegative(double x, const char* fn) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": argument must be finite and >= 0");
  }
}

// Start index for backward recurrences. Large enough that the seed's
// contamination has decayed below double precision at every order <= n,
// and that normalization sums have converged for argument x.
int miller_start(int n, double x) {
  const double top = std::max(static_cast<double>(n), x);
  const int m = static_cast<int>(top) + 20 + static_cast<int>(std::sqrt(160.0 * top));
  return 2 * ((m + 1) / 2);
}

// ---------------------------------------------------------------------------
// J_n

double bessel_j_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  const double x2 = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= x2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

struct MillerJ {
  double jn = 0.0;
  double j0 = 0.0;
  double j1 = 0.0;
};

// Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
// J_0 + 2 sum_{k>=1} J_{2k} = 1.
MillerJ miller_j(int n, double x, int start) {
  double next = 0.0;  // J_{k+1}
  double cur = 1.0;   // J_k
  double sum = (start % 2 == 0) ? 2.0 * cur : 0.0;
  double jn = (n == start) ? cur : 0.0;
  double j1 = (start == 1) ? cur : 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    const int idx = k - 1;
    if (idx == n) jn = cur;
    if (idx == 1) j1 = cur;
    if (idx > 0 && idx % 2 == 0) sum += 2.0 * cur;
    if (std::abs(cur) > kBig) {
      cur *= kSmall;
      next *= kSmall;
      sum *= kSmall;
      jn *= kSmall;
      j1 *= kSmall;
    }
  }
  sum += cur;
  return {jn / sum, cur / sum, j1 / sum};
}

double bessel_j_recurrence(int n, double x, int start) {
  if (static_cast<double>(n) > x) return miller_j(n, x, start).jn;
  const MillerJ base = miller_j(0, x, start);
  if (n == 0) return base.j0;
  double jm = base.j0;
  double j = base.j1;
  for (int k = 1; k < n; ++k) {
    const double jp = (2.0 * k / x) * j - jm;
    jm = j;
    j = jp;
  }
  return j;
}

void check_j_domain(int order, double x, const char* fn) {
  check_order(order, fn);
  check_nonnegative(x, fn);
  if (x > kMaxBesselJArg) throw std::domain_error(std::string(fn) + ": argument above 1e4");
}

// ---------------------------------------------------------------------------
// I_n, exponentially scaled

double bessel_i_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  const double x2 = half * half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= x2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return sum;
}

int miller_start_i(int n, double x) {
  const int m = n + 20 + static_cast<int>(std::sqrt(160.0 * n)) +
                static_cast<int>(std::sqrt(80.0 * x));
  return 2 * ((m + 1) / 2);
}

// Backward recurrence I_{k-1} = (2k/x) I_k + I_{k+1}, normalized by
// I_0 + 2 sum_{k>=1} I_k = e^x.
double bessel_i_scaled_miller(int n, double x, int start) {
  double next = 0.0;
  double cur = 1.0;
  double sum = 2.0 * cur;
  double in = (n == start) ? cur : 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur + next;
    next = cur;
    cur = prev;
    const int idx = k - 1;
    if (idx == n) in = cur;
    sum += (idx > 0) ? 2.0 * cur : cur;
    if (cur > kBig) {
      cur *= kSmall;
      next *= kSmall;
      sum *= kSmall;
      in *= kSmall;
    }
  }
  return in / sum;
}

void check_i_domain(int order, double x, const char* fn) {
  check_order(order, fn);
  check_nonnegative(x, fn);
  if (x > kMaxBesselIArg) throw std::overflow_error(std::string(fn) + ": argument above 700");
}

double bessel_i_scaled_impl(int order, double x, int start) {
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 10.0) return bessel_i_series(order, x) * std::exp(-x);
  return bessel_i_scaled_miller(order, x, start);
}

// ---------------------------------------------------------------------------
// Spherical functions

// x^n / (2n+1)!! times the ascending series in s * x^2 / 2, with s = -1 for
// j_n and s = +1 for the modified function.
double spherical_series(int n, double x, double sign) {
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= x / (2.0 * i + 1.0);
  const double x2 = sign * 0.5 * x * x;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= x2 / (static_cast<double>(k) * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_j(int order, double x) {
  check_j_domain(order, x, "bessel_j");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 2.0) return bessel_j_series(order, x);
  return bessel_j_recurrence(order, x, miller_start(order, x));
}

SpecFunResult bessel_j_result(int order, double x) {
  const double v = bessel_j(order, x);
  if (x == 0.0) return {v, 0.0};
  double err = 0.0;
  if (x <= 2.0) {
    err = 8.0 * kEps * std::max(1.0, std::abs(v));
  } else {
    // Compare against a deeper backward start; the rest is accumulated rounding.
    const int start = miller_start(order, x);
    const double deeper = bessel_j_recurrence(order, x, start + 40);
    err = std::abs(deeper - v) + kEps * std::sqrt(static_cast<double>(start)) * 4.0;
  }
  return {v, err};
}

double bessel_i_scaled(int order, double x) {
  check_i_domain(order, x, "bessel_i");
  return bessel_i_scaled_impl(order, x, miller_start_i(order, x));
}

double bessel_i(int order, double x) {
  const double s = bessel_i_scaled(order, x);
  return s * std::exp(x);
}

SpecFunResult bessel_i_result(int order, double x) {
  check_i_domain(order, x, "bessel_i");
  const int start = miller_start_i(order, x);
  const double v = bessel_i_scaled_impl(order, x, start) * std::exp(x);
  double err = 8.0 * kEps * std::abs(v);
  if (x > 10.0) {
    const double deeper = bessel_i_scaled_impl(order, x, start + 40) * std::exp(x);
    err += std::abs(deeper - v);
  }
  return {v, err};
}

double spherical_j(int order, double x) {
  check_j_domain(order, x, "spherical_j");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 1.0) return spherical_series(order, x, -1.0);

  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  const double j1 = s / (x * x) - c / x;
  if (order == 0) return j0;
  if (order == 1) return j1;

  if (static_cast<double>(order) <= x) {
    double jm = j0;
    double j = j1;
    for (int k = 1; k < order; ++k) {
      const double jp = ((2.0 * k + 1.0) / x) * j - jm;
      jm = j;
      j = jp;
    }
    return j;
  }

  // Backward recurrence j_{k-1} = ((2k+1)/x) j_k - j_{k+1}, scaled against
  // whichever of the closed-form j_0, j_1 is larger in magnitude.
  const int start = miller_start(order, x);
  double next = 0.0;
  double cur = 1.0;
  double jn = 0.0;
  double b1 = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = ((2.0 * k + 1.0) / x) * cur - next;
    next = cur;
    cur = prev;
    const int idx = k - 1;
    if (idx == order) jn = cur;
    if (idx == 1) b1 = cur;
    if (std::abs(cur) > kBig) {
      cur *= kSmall;
      next *= kSmall;
      jn *= kSmall;
      b1 *= kSmall;
    }
  }
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / cur : j1 / b1;
  return jn * scale;
}

double modified_spherical_f_scaled(int order, double z) {
  check_order(order, "modified_spherical_f");
  if (!(z >= kMinModifiedSphericalArg) || !std::isfinite(z)) {
    throw std::domain_error("modified_spherical_f: argument must be >= 1e-6");
  }
  if (z > kMaxBesselIArg) throw std::overflow_error("modified_spherical_f: argument above 700");
  if (z <= 20.0) return spherical_series(order, z, 1.0) * std::exp(-z);

  // e^-z f_0(z) = (1 - e^{-2z}) / 2z; f_n is positive and decreasing in n.
  const double f0 = -std::expm1(-2.0 * z) / (2.0 * z);
  if (order == 0) return f0;
  const int start = miller_start_i(order, z);
  double next = 0.0;
  double cur = 1.0;
  double fn = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = ((2.0 * k + 1.0) / z) * cur + next;
    next = cur;
    cur = prev;
    if (k - 1 == order) fn = cur;
    if (cur > kBig) {
      cur *= kSmall;
      next *= kSmall;
      fn *= kSmall;
    }
  }
  return fn * (f0 / cur);
}

double modified_spherical_f(int order, double z) {
  const double s = modified_spherical_f_scaled(order, z);
  return s * std::exp(z);
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || l > kMaxHarmonicDegree) {
    throw std::out_of_range("spherical_harmonic: degree " + std::to_string(l) + " unsupported");
  }
  if (m < -l || m > l) {
    throw std::out_of_range("spherical_harmonic: |m| > l (l=" + std::to_string(l) +
                            ", m=" + std::to_string(m) + ")");
  }
  const int am = m < 0 ? -m : m;
  const double x = std::cos(theta);
  const double s = std::sin(theta);

  // Normalized P_m^m including (-1)^m, then upward in degree.
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int i = 1; i <= am; ++i) pmm *= -s * std::sqrt((2.0 * i + 1.0) / (2.0 * i));

  double plm = pmm;
  if (l > am) {
    double p_prev = pmm;
    double p_cur = x * std::sqrt(2.0 * am + 3.0) * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - am * am));
      const double b = std::sqrt((static_cast<double>(ll - 1) * (ll - 1) - am * am) /
                                 (4.0 * (ll - 1) * (ll - 1) - 1.0));
      const double p_next = a * (x * p_cur - b * p_prev);
      p_prev = p_cur;
      p_cur = p_next;
    }
    plm = p_cur;
  }

  const std::complex<double> y(plm * std::cos(am * phi), plm * std::sin(am * phi));
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

}  // namespace ldirac::specfun
