#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ldirac/params.hpp"

namespace ldirac::ops {

/// Smallest admissible node count per axis.
inline constexpr std::size_t kMinNodes = 65;
/// Nodes lost per edge by one application of the 5-point stencil.
inline constexpr std::size_t kStencilHalfWidth = 2;

/// Uniform grid lo, lo + h, ..., hi with an odd node count.
struct Grid1D {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;

  /// Throws std::invalid_argument for n < 65, even n, or hi <= lo.
  static Grid1D make(double lo, double hi, std::size_t n);
  static Grid1D symmetric(double half_width, std::size_t n) { return make(-half_width, half_width, n); }

  double h() const { return (hi - lo) / static_cast<double>(n - 1); }
  /// Node coordinate; mirrored nodes of a symmetric grid are exact negatives.
  double x(std::size_t i) const {
    const double span = hi - lo;
    const double last = static_cast<double>(n - 1);
    if (2 * i <= n - 1) return lo + span * (static_cast<double>(i) / last);
    return hi - span * (static_cast<double>(n - 1 - i) / last);
  }
};

/// Tensor-product grid; node (ix, iy) is stored at iy * x.n + ix.
struct Grid2D {
  Grid1D x;
  Grid1D y;

  static Grid2D square(double half_width, std::size_t n) {
    const Grid1D g = Grid1D::symmetric(half_width, n);
    return {g, g};
  }
  std::size_t size() const { return x.n * y.n; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * x.n + ix; }
};

/// Radial nodes r_i = (i + 1) h, i = 0..n-1, h = hi / n. Excludes the origin.
struct RadialGrid {
  double hi = 0.0;
  std::size_t n = 0;

  static RadialGrid make(double hi, std::size_t n);

  double h() const { return hi / static_cast<double>(n); }
  double r(std::size_t i) const { return h() * static_cast<double>(i + 1); }
};

/// Complex spinor values on the nodes of a grid. The outermost `margin`
/// nodes on each edge carry no valid data and are skipped by norms.
template <class GridT, std::size_t C>
struct SampledSpinorField {
  using Value = std::array<cplx, C>;
  static constexpr std::size_t components = C;

  GridT grid;
  std::vector<Value> values;
  std::size_t margin = 0;

  SampledSpinorField() = default;
  explicit SampledSpinorField(const GridT& g) : grid(g), values(node_count(g)) {}

  static std::size_t node_count(const Grid1D& g) { return g.n; }
  static std::size_t node_count(const Grid2D& g) { return g.size(); }
};

using ScalarField1D = SampledSpinorField<Grid1D, 1>;
using Field1D = SampledSpinorField<Grid1D, 4>;
using Field2D = SampledSpinorField<Grid2D, 2>;

template <std::size_t C, class F>
SampledSpinorField<Grid1D, C> sample(const Grid1D& g, F&& f) {
  SampledSpinorField<Grid1D, C> out(g);
  for (std::size_t i = 0; i < g.n; ++i) out.values[i] = f(g.x(i));
  return out;
}

template <std::size_t C, class F>
SampledSpinorField<Grid2D, C> sample(const Grid2D& g, F&& f) {
  SampledSpinorField<Grid2D, C> out(g);
  for (std::size_t iy = 0; iy < g.y.n; ++iy)
    for (std::size_t ix = 0; ix < g.x.n; ++ix) out.values[g.index(ix, iy)] = f(g.x.x(ix), g.y.x(iy));
  return out;
}

/// Discrete L2 norm over valid nodes (plus extra_margin more per edge).
/// Summation runs in node order, so results are reproducible bit for bit.
template <std::size_t C>
double l2_norm(const SampledSpinorField<Grid1D, C>& f, std::size_t extra_margin = 0) {
  const std::size_t m = f.margin + extra_margin;
  if (2 * m >= f.grid.n) throw std::invalid_argument("l2_norm: margin swallows the grid");
  double s = 0.0;
  for (std::size_t i = m; i + m < f.grid.n; ++i)
    for (const cplx& z : f.values[i]) s += std::norm(z);
  return std::sqrt(s * f.grid.h());
}

template <std::size_t C>
double l2_norm(const SampledSpinorField<Grid2D, C>& f, std::size_t extra_margin = 0) {
  const std::size_t m = f.margin + extra_margin;
  const Grid2D& g = f.grid;
  if (2 * m >= g.x.n || 2 * m >= g.y.n) throw std::invalid_argument("l2_norm: margin swallows the grid");
  double s = 0.0;
  for (std::size_t iy = m; iy + m < g.y.n; ++iy)
    for (std::size_t ix = m; ix + m < g.x.n; ++ix)
      for (const cplx& z : f.values[g.index(ix, iy)]) s += std::norm(z);
  return std::sqrt(s * g.x.h() * g.y.h());
}

/// a * x + b * y, keeping the wider margin of the two.
template <class GridT, std::size_t C>
SampledSpinorField<GridT, C> combine(cplx a, const SampledSpinorField<GridT, C>& x, cplx b,
                                     const SampledSpinorField<GridT, C>& y) {
  if (x.values.size() != y.values.size()) throw std::invalid_argument("combine: grid mismatch");
  SampledSpinorField<GridT, C> out = x;
  out.margin = std::max(x.margin, y.margin);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    for (std::size_t c = 0; c < C; ++c) out.values[i][c] = a * x.values[i][c] + b * y.values[i][c];
  return out;
}

}  // namespace ldirac::ops
