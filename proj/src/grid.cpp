#include "ldirac/grid.hpp"

#include <string>

namespace ldirac::ops {

Grid1D Grid1D::make(double lo, double hi, std::size_t n) {
  if (n < kMinNodes) {
    throw std::invalid_argument("grid too small: " + std::to_string(n) + " nodes, need >= " +
                                std::to_string(kMinNodes));
  }
  if (n % 2 == 0) throw std::invalid_argument("grid node count must be odd");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid bounds must satisfy lo < hi");
  }
  return {lo, hi, n};
}

RadialGrid RadialGrid::make(double hi, std::size_t n) {
  if (n < kMinNodes) {
    throw std::invalid_argument("radial grid too small: " + std::to_string(n) + " nodes");
  }
  if (n % 2 == 0) throw std::invalid_argument("grid node count must be odd");
  if (!(hi > 0.0) || !std::isfinite(hi)) throw std::invalid_argument("radial grid needs hi > 0");
  return {hi, n};
}

}  // namespace ldirac::ops
