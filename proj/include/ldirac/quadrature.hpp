#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ldirac::quad {

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t evaluations = 0;
};

struct SimpsonOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  /// Uniform panels seeded before adaptive refinement; keeps narrow
  /// features from being skipped by the first coarse estimate.
  int initial_panels = 64;
  int max_depth = 40;
};

/// Adaptive composite Simpson rule with Richardson correction on [a, b].
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            const SimpsonOptions& opts = {});

/// Composite Simpson on n (odd, >= 3) equally spaced samples with spacing h.
double composite_simpson(const std::vector<double>& samples, double h);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform rule in phi. Exact for spherical polynomials of degree
/// < min(2 n_theta, n_phi).
struct SphereRule {
  std::vector<double> theta;
  std::vector<double> phi;
  /// weights[i_theta * phi.size() + i_phi]
  std::vector<double> weights;
};

SphereRule sphere_rule(int n_theta, int n_phi);

}  // namespace ldirac::quad
