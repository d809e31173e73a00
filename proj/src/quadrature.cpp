#include "ldirac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldirac/params.hpp"

namespace ldirac::quad {

namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) * (fa + 4.0 * fm + fb) / 6.0;
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              std::size_t& evals, double& err_acc) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
  const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    err_acc += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  const Panel lp{p.a, lm, p.m, p.fa, flm, p.fm, left};
  const Panel rp{p.m, rm, p.b, p.fm, frm, p.fb, right};
  return refine(f, lp, 0.5 * tol, depth - 1, evals, err_acc) +
         refine(f, rp, 0.5 * tol, depth - 1, evals, err_acc);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            const SimpsonOptions& opts) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson: empty interval");
  if (opts.initial_panels < 1) throw std::invalid_argument("adaptive_simpson: panels < 1");
  const int np = opts.initial_panels;
  const double w = (b - a) / np;

  // Coarse pass gives the magnitude scale for the relative tolerance.
  std::vector<double> fx(2 * np + 1);
  for (int i = 0; i <= 2 * np; ++i) fx[i] = f(a + 0.5 * w * i);
  std::size_t evals = fx.size();
  double coarse = 0.0;
  for (int i = 0; i < np; ++i) {
    coarse += std::abs(simpson(a + w * i, a + w * (i + 1), fx[2 * i], fx[2 * i + 1], fx[2 * i + 2]));
  }
  const double tol = std::max(opts.abs_tol, opts.rel_tol * coarse) / np;

  double total = 0.0;
  double err = 0.0;
  for (int i = 0; i < np; ++i) {
    const double pa = a + w * i;
    const double pb = (i + 1 == np) ? b : a + w * (i + 1);
    const Panel p{pa, 0.5 * (pa + pb), pb, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2],
                  simpson(pa, pb, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2])};
    total += refine(f, p, tol, opts.max_depth, evals, err);
  }
  return {total, err, evals};
}

double composite_simpson(const std::vector<double>& samples, double h) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("composite_simpson: need odd n >= 3");
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 == 1 ? odd : even) += samples[i];
  return h / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  if (n == 1) return {{0.0}, {2.0}};
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

SphereRule sphere_rule(int n_theta, int n_phi) {
  if (n_phi < 1) throw std::invalid_argument("sphere_rule: n_phi < 1");
  const GaussLegendre gl = gauss_legendre(n_theta);
  SphereRule rule;
  rule.theta.resize(n_theta);
  rule.phi.resize(n_phi);
  rule.weights.resize(static_cast<std::size_t>(n_theta) * n_phi);
  const double dphi = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) rule.phi[j] = dphi * j;
  for (int i = 0; i < n_theta; ++i) {
    rule.theta[i] = std::acos(gl.nodes[i]);
    for (int j = 0; j < n_phi; ++j) rule.weights[static_cast<std::size_t>(i) * n_phi + j] = gl.weights[i] * dphi;
  }
  return rule;
}

}  // namespace ldirac::quad
