#include "ldirac/checks.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ldirac/spin_algebra.hpp"

namespace ldirac::ops {

namespace {

// Squared L2 norms of each term of an equation plus that of their sum.
class TermNorms {
 public:
  explicit TermNorms(std::size_t terms) : sq_(terms, 0.0) {}

  void add(std::initializer_list<cplx> terms) {
    cplx sum = 0.0;
    std::size_t t = 0;
    for (const cplx& v : terms) {
      sq_[t++] += std::norm(v);
      sum += v;
    }
    total_ += std::norm(sum);
  }

  double relative() const {
    double mx = 0.0;
    for (double s : sq_) mx = std::max(mx, s);
    if (mx == 0.0) return 0.0;
    return std::sqrt(total_ / mx);
  }

 private:
  std::vector<double> sq_;
  double total_ = 0.0;
};

template <class GridT, std::size_t C>
double diff_norm(const SampledSpinorField<GridT, C>& a, cplx sa, const SampledSpinorField<GridT, C>& b,
                 cplx sb) {
  return l2_norm(combine(sa, a, sb, b));
}

template <class GridT, std::size_t C>
SampledSpinorField<GridT, C> with_margin(SampledSpinorField<GridT, C> f, std::size_t margin) {
  f.margin = std::max(f.margin, margin);
  return f;
}

PhysParams free_params(const PhysParams& p) {
  PhysParams out = p;
  out.q = 0.0;
  return out;
}

// Radial samples on r_i with first derivatives at interior nodes.
struct RadialSamples {
  std::vector<double> r;
  std::vector<cplx> f;
  double h = 0.0;

  cplx d1(std::size_t i) const { return ops::d1(f[i - 2], f[i - 1], f[i + 1], f[i + 2], h); }
  cplx d2(std::size_t i) const { return ops::d2(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2], h); }
};

template <class F>
RadialSamples sample_radial(const RadialGrid& g, F&& f) {
  RadialSamples s;
  s.h = g.h();
  s.r.resize(g.n);
  s.f.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    s.r[i] = g.r(i);
    s.f[i] = f(s.r[i]);
  }
  return s;
}

template <class F>
RadialSamples sample_line(const Grid1D& g, F&& f) {
  RadialSamples s;
  s.h = g.h();
  s.r.resize(g.n);
  s.f.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    s.r[i] = g.x(i);
    s.f[i] = f(s.r[i]);
  }
  return s;
}

constexpr double kScaledRadius2 = 60.0;

}  // namespace

Grid1D default_grid_1d(const PhysParams& params, std::size_t n) {
  return Grid1D::symmetric(params.truncation_radius(), n);
}

Grid2D default_grid_2d(const PhysParams& params, std::size_t n) {
  return Grid2D::square(params.truncation_radius(), n);
}

RadialGrid default_radial_grid(const PhysParams& params, std::size_t n) {
  return RadialGrid::make(params.truncation_radius(), n);
}

Field1D sample_state(const states::State1D& s, const Grid1D& g) {
  return sample<4>(g, [&](double z) { return s(z); });
}

Field2D sample_state(const states::State2D& s, const Grid2D& g) {
  return sample<2>(g, [&](double x, double y) { return s(x, y); });
}

double eigen_residual_1d(const states::State1D& s, std::size_t n) {
  const PhysParams& p = s.params();
  const Field1D psi = sample_state(s, default_grid_1d(p, n));
  const Field1D hpsi = apply_H_1d(psi, p);
  const double e = s.spec().energy;
  const double num = diff_norm(hpsi, 1.0, with_margin(psi, hpsi.margin), -e);
  double den = std::abs(e) * l2_norm(psi, hpsi.margin);
  if (e == 0.0) den = l2_norm(apply_H_1d(psi, free_params(p)));
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

double eigen_residual_2d(const states::State2D& s, std::size_t n) {
  const PhysParams& p = s.params();
  const Field2D psi = sample_state(s, default_grid_2d(p, n));
  const Field2D hpsi = apply_H_2d(psi, p);
  const double e = s.spec().energy;
  const double num = diff_norm(hpsi, 1.0, with_margin(psi, hpsi.margin), -e);
  double den = std::abs(e) * l2_norm(psi, hpsi.margin);
  if (e == 0.0) den = l2_norm(apply_H_2d(psi, free_params(p)));
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

JzCheck jz_eigen_check_2d(const states::State2D& s, std::size_t n) {
  const PhysParams& p = s.params();
  const Field2D psi = sample_state(s, default_grid_2d(p, n));
  const Field2D jpsi = jz_apply_2d(psi, p);
  const Grid2D& g = psi.grid;
  const std::size_t m = jpsi.margin;
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t iy = m; iy + m < g.y.n; ++iy) {
    for (std::size_t ix = m; ix + m < g.x.n; ++ix) {
      const std::size_t i = g.index(ix, iy);
      for (std::size_t c = 0; c < 2; ++c) {
        num += std::conj(psi.values[i][c]) * jpsi.values[i][c];
        den += std::norm(psi.values[i][c]);
      }
    }
  }
  JzCheck out;
  out.eigenvalue = num.real() / den;
  const double expected = (s.spec().m_ang + 0.5) * p.hbar;
  out.residual = diff_norm(jpsi, 1.0, with_margin(psi, m), -expected) /
                 (std::abs(expected) * l2_norm(psi, m));
  return out;
}

RadialResiduals radial_residuals_3d(const states::State3D& s, const RadialGrid& grid,
                                    VEquationReading reading) {
  const PhysParams& p = s.params();
  if (grid.n < kMinNodes) throw std::invalid_argument("grid too small for the 5-point stencil");
  const double lam = s.qn().lambda();
  const cplx nu = s.norm_const() * s.upper_amp();
  const cplx nv = s.norm_const() * s.lower_amp();
  const RadialSamples u = sample_radial(grid, [&](double r) { return nu * s.radial_u(r); });
  const RadialSamples v = sample_radial(grid, [&](double r) { return nv * s.radial_v(r); });

  const double e = s.spec().energy;
  const double mc2 = p.rest_energy();
  const double hc = p.hbar * p.c;
  const double qh = p.q / p.hbar;
  const double cu = (e - mc2) / hc;
  const double cv = (reading == VEquationReading::consistent ? e + mc2 : e - mc2) / hc;

  TermNorms eq_u(4);
  TermNorms eq_v(4);
  for (std::size_t i = kStencilHalfWidth; i + kStencilHalfWidth < grid.n; ++i) {
    const double r = u.r[i];
    eq_u.add({v.d1(i), (lam + 1.0) / r * v.f[i], qh * r * v.f[i], -cu * u.f[i]});
    eq_v.add({u.d1(i), -(lam - 1.0) / r * u.f[i], qh * r * u.f[i], cv * v.f[i]});
  }
  return {eq_u.relative(), eq_v.relative()};
}

double scalar_ode_residual(const states::ClosedFormState& state, ScalarOde which, std::size_t n) {
  const double zmax = std::sqrt(kScaledRadius2);
  switch (which) {
    case ScalarOde::line: {
      const auto* s = std::get_if<states::State1D>(&state);
      if (!s) throw std::invalid_argument("the line equation needs a 1D state");
      const double len = std::sqrt(s->params().hbar / s->params().q);
      const Grid1D g = Grid1D::symmetric(zmax, n);
      const RadialSamples u = sample_line(g, [&](double z) { return s->scalar_factor(z * len); });
      const double k1 = s->spec().K1;
      TermNorms t(4);
      for (std::size_t i = kStencilHalfWidth; i + kStencilHalfWidth < g.n; ++i) {
        const double z = u.r[i];
        t.add({u.d2(i), 2.0 * z * u.d1(i), z * z * u.f[i], k1 * u.f[i]});
      }
      return t.relative();
    }
    case ScalarOde::planar: {
      const auto* s = std::get_if<states::State2D>(&state);
      if (!s) throw std::invalid_argument("the planar equation needs a 2D state");
      const double len = std::sqrt(s->params().hbar / s->params().q);
      const RadialGrid g = RadialGrid::make(zmax, n);
      const RadialSamples f = sample_radial(g, [&](double r) { return cplx(s->radial_upper(r * len)); });
      const double m = s->spec().m_ang;
      const double k3 = s->spec().K3;
      TermNorms t(6);
      for (std::size_t i = kStencilHalfWidth; i + kStencilHalfWidth < g.n; ++i) {
        const double r = f.r[i];
        const cplx df = f.d1(i);
        t.add({f.d2(i), df / r, 2.0 * r * df, r * r * f.f[i], -m * m / (r * r) * f.f[i], k3 * f.f[i]});
      }
      return t.relative();
    }
    case ScalarOde::radial_upper:
    case ScalarOde::radial_lower: {
      const auto* s = std::get_if<states::State3D>(&state);
      if (!s) throw std::invalid_argument("the radial equations need a 3D state");
      const bool upper = which == ScalarOde::radial_upper;
      const double len = std::sqrt(s->params().hbar / s->params().q);
      const RadialGrid g = RadialGrid::make(zmax, n);
      const RadialSamples f = sample_radial(g, [&](double r) {
        return cplx(upper ? s->radial_u(r * len) : s->radial_v(r * len));
      });
      const double lam = s->qn().lambda();
      const double cent = upper ? lam * (lam - 1.0) : lam * (lam + 1.0);
      const double k4 = s->spec().K4;
      TermNorms t(6);
      for (std::size_t i = kStencilHalfWidth; i + kStencilHalfWidth < g.n; ++i) {
        const double r = f.r[i];
        const cplx df = f.d1(i);
        t.add({f.d2(i), 2.0 / r * df, 2.0 * r * df, r * r * f.f[i], -cent / (r * r) * f.f[i],
               k4 * f.f[i]});
      }
      return t.relative();
    }
  }
  throw std::invalid_argument("unknown scalar equation");
}

double pt_transform_check(const PhysParams& params, const ScalarField1D& f) {
  const Grid1D& g = f.grid;
  if (std::abs(g.lo + g.hi) > 1e-12 * std::abs(g.hi)) {
    throw std::invalid_argument("pt_transform_check: grid must be symmetric about 0");
  }
  auto pt = [](const ScalarField1D& in) {
    ScalarField1D out(in.grid);
    out.margin = in.margin;
    const std::size_t n = in.grid.n;
    for (std::size_t i = 0; i < n; ++i) out.values[i][0] = std::conj(in.values[n - 1 - i][0]);
    return out;
  };
  const ScalarField1D direct = apply_generalized_momentum_1d(f, params);
  const ScalarField1D conjugated = pt(apply_generalized_momentum_1d(pt(f), params));
  const double num = diff_norm(conjugated, 1.0, direct, -1.0);
  const double den = l2_norm(direct);
  if (den == 0.0) return num;
  return num / den;
}

double similarity_check(const PhysParams& params, const Field1D& psi) {
  params.validate(true);
  const Grid1D& g = psi.grid;
  const double w = params.q / (2.0 * params.hbar);
  Field1D amplified = psi;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    const double s_inv = std::exp(w * x * x);
    for (cplx& v : amplified.values[i]) {
      v *= s_inv;
      if (std::abs(v) > kMaxAmplified) {
        throw std::overflow_error("similarity_check: S^-1 psi exceeds the amplification guard");
      }
    }
  }
  Field1D transformed = apply_H_1d(amplified, free_params(params));
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    const double s = std::exp(-w * x * x);
    for (cplx& v : transformed.values[i]) v *= s;
  }
  const Field1D direct = apply_H_1d(psi, params);
  const double num = diff_norm(transformed, 1.0, direct, -1.0);
  const double den = l2_norm(direct);
  if (den == 0.0) return num;
  return num / den;
}

double commutator_sigma_z_1d(const PhysParams& params, const Field1D& psi) {
  const spin::Matrix4& sz = spin::dirac_matrices().sigma_z;
  auto apply_sz = [&](Field1D f) {
    for (auto& v : f.values) v = sz * v;
    return f;
  };
  const Field1D hpsi = apply_H_1d(psi, params);
  const Field1D a = apply_sz(hpsi);
  const Field1D b = apply_H_1d(apply_sz(psi), params);
  const double num = diff_norm(a, 1.0, b, -1.0);
  const double den = l2_norm(hpsi);
  if (den == 0.0) return num;
  return num / den;
}

}  // namespace ldirac::ops
