#include "ldirac/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ldirac {

void PhysParams::validate(bool allow_zero_q) const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(hbar) || hbar <= 0.0) throw std::invalid_argument("hbar must be > 0");
  if (!finite(c) || c <= 0.0) throw std::invalid_argument("c must be > 0");
  if (!finite(mass) || mass < 0.0) throw std::invalid_argument("mass must be >= 0");
  if (!finite(q) || q < 0.0 || (q == 0.0 && !allow_zero_q)) {
    throw std::invalid_argument("envelope parameter q must be > 0");
  }
}

double PhysParams::truncation_radius() const { return std::sqrt(60.0 * hbar / q); }

}  // namespace ldirac
