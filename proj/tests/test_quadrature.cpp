#include <cmath>
#include <vector>

#include "doctest.h"
#include "ldirac/params.hpp"
#include "ldirac/quadrature.hpp"

using namespace ldirac;
using namespace ldirac::quad;

TEST_CASE("adaptive Simpson integrates a Gaussian to the closed form") {
  const double q = 0.7;
  const QuadResult r = adaptive_simpson([&](double z) { return std::exp(-q * z * z); }, -30.0, 30.0);
  CHECK(std::abs(r.value - std::sqrt(kPi / q)) <= 1e-13);
  CHECK(r.est_error >= 0.0);
}

TEST_CASE("adaptive Simpson handles oscillatory and polynomial integrands") {
  const QuadResult a = adaptive_simpson([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0);
  CHECK(std::abs(a.value - std::sin(40.0) / 40.0) <= 1e-13);
  const QuadResult b = adaptive_simpson([](double x) { return x * x * x; }, -1.0, 2.0);
  CHECK(std::abs(b.value - 3.75) <= 1e-14);
}

TEST_CASE("composite Simpson is exact for cubics and needs an odd sample count") {
  std::vector<double> s;
  const double h = 0.1;
  for (int i = 0; i <= 20; ++i) {
    const double x = i * h;
    s.push_back(x * x * x - x);
  }
  CHECK(std::abs(composite_simpson(s, h) - (4.0 - 2.0)) <= 1e-13);
  s.pop_back();
  CHECK_THROWS(composite_simpson(s, h));
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 12}) {
    const GaussLegendre g = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) <= 1e-14);
    const int deg = 2 * n - 2;
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
    CHECK(std::abs(s - 2.0 / (deg + 1)) <= 1e-14);
  }
}

TEST_CASE("sphere rule integrates the area and cos^2") {
  const SphereRule r = sphere_rule(4, 8);
  double area = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < r.theta.size(); ++i)
    for (std::size_t j = 0; j < r.phi.size(); ++j) {
      const double w = r.weights[i * r.phi.size() + j];
      area += w;
      c2 += w * std::cos(r.theta[i]) * std::cos(r.theta[i]);
    }
  CHECK(std::abs(area - 4.0 * kPi) <= 1e-13);
  CHECK(std::abs(c2 - 4.0 * kPi / 3.0) <= 1e-13);
}
