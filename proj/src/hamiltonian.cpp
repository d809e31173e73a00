#include "ldirac/hamiltonian.hpp"

#include <stdexcept>

#include "ldirac/spin_algebra.hpp"

namespace ldirac::ops {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_nodes(std::size_t n) {
  if (n < kMinNodes) throw std::invalid_argument("grid too small for the 5-point stencil");
}

// Derivative of component c at node i along a strided axis.
template <class Values>
cplx deriv(const Values& v, std::size_t i, std::size_t stride, std::size_t c, double h) {
  return d1(v[i - 2 * stride][c], v[i - stride][c], v[i + stride][c], v[i + 2 * stride][c], h);
}

}  // namespace

ScalarField1D apply_generalized_momentum_1d(const ScalarField1D& f, const PhysParams& params) {
  params.validate(true);
  const Grid1D& g = f.grid;
  require_nodes(g.n);
  ScalarField1D out(g);
  out.margin = f.margin + kStencilHalfWidth;
  const double h = g.h();
  for (std::size_t i = out.margin; i + out.margin < g.n; ++i) {
    const cplx df = deriv(f.values, i, 1, 0, h);
    out.values[i][0] = -kI * params.hbar * df - kI * params.q * g.x(i) * f.values[i][0];
  }
  return out;
}

Field1D apply_H_1d(const Field1D& psi, const PhysParams& params) {
  params.validate(true);
  const Grid1D& g = psi.grid;
  require_nodes(g.n);
  const spin::DiracMatrices& dm = spin::dirac_matrices();
  const spin::Matrix4 c_alpha = cplx(params.c) * dm.alpha_z;
  const spin::Matrix4 mass_beta = cplx(params.rest_energy()) * dm.beta;

  Field1D out(g);
  out.margin = psi.margin + kStencilHalfWidth;
  const double h = g.h();
  for (std::size_t i = out.margin; i + out.margin < g.n; ++i) {
    const double z = g.x(i);
    spin::Spinor4 pi{};
    for (std::size_t c = 0; c < 4; ++c) {
      pi[c] = -kI * params.hbar * deriv(psi.values, i, 1, c, h) - kI * params.q * z * psi.values[i][c];
    }
    const spin::Spinor4 kin = c_alpha * pi;
    const spin::Spinor4 rest = mass_beta * psi.values[i];
    for (std::size_t c = 0; c < 4; ++c) out.values[i][c] = kin[c] + rest[c];
  }
  return out;
}

Field2D apply_H_2d(const Field2D& psi, const PhysParams& params) {
  params.validate(true);
  if (params.mass != 0.0) throw std::invalid_argument("apply_H_2d: the planar operator is massless");
  const Grid2D& g = psi.grid;
  require_nodes(g.x.n);
  require_nodes(g.y.n);

  Field2D out(g);
  out.margin = psi.margin + kStencilHalfWidth;
  const std::size_t m = out.margin;
  const double hx = g.x.h();
  const double hy = g.y.h();
  const double hb = params.hbar;
  const double q = params.q;
  const double c = params.c;
  for (std::size_t iy = m; iy + m < g.y.n; ++iy) {
    const double y = g.y.x(iy);
    for (std::size_t ix = m; ix + m < g.x.n; ++ix) {
      const double x = g.x.x(ix);
      const std::size_t i = g.index(ix, iy);
      const auto& v = psi.values[i];
      // Pi_x f = -i hbar f_x - i q x f, Pi_y likewise.
      const cplx pix1 = -kI * hb * deriv(psi.values, i, 1, 0, hx) - kI * q * x * v[0];
      const cplx piy1 = -kI * hb * deriv(psi.values, i, g.x.n, 0, hy) - kI * q * y * v[0];
      const cplx pix2 = -kI * hb * deriv(psi.values, i, 1, 1, hx) - kI * q * x * v[1];
      const cplx piy2 = -kI * hb * deriv(psi.values, i, g.x.n, 1, hy) - kI * q * y * v[1];
      out.values[i][0] = c * (pix2 - kI * piy2);
      out.values[i][1] = c * (pix1 + kI * piy1);
    }
  }
  return out;
}

Field2D jz_apply_2d(const Field2D& psi, const PhysParams& params) {
  params.validate(true);
  const Grid2D& g = psi.grid;
  require_nodes(g.x.n);
  require_nodes(g.y.n);

  Field2D out(g);
  out.margin = psi.margin + kStencilHalfWidth;
  const std::size_t m = out.margin;
  const double hx = g.x.h();
  const double hy = g.y.h();
  const double hb = params.hbar;
  for (std::size_t iy = m; iy + m < g.y.n; ++iy) {
    const double y = g.y.x(iy);
    for (std::size_t ix = m; ix + m < g.x.n; ++ix) {
      const double x = g.x.x(ix);
      const std::size_t i = g.index(ix, iy);
      for (std::size_t c = 0; c < 2; ++c) {
        const cplx dx = deriv(psi.values, i, 1, c, hx);
        const cplx dy = deriv(psi.values, i, g.x.n, c, hy);
        const cplx lz = -kI * hb * (x * dy - y * dx);
        const double spin = (c == 0 ? 0.5 : -0.5) * hb;
        out.values[i][c] = lz + spin * psi.values[i][c];
      }
    }
  }
  return out;
}

}  // namespace ldirac::ops
