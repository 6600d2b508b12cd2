#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gnsw {

// Physical parameters of the bilayer model. gamma is the density ratio of the
// two fluids, delta the depth ratio; the one-layer (water-wave) case is
// gamma = 0, delta = 1. h0 is the depth clearance used by the non-cavitation
// guard: both layer depths h1 = 1 - zeta and h2 = 1/delta + zeta must stay
// above it. h0 = 0 requests the default clearance 0.05*min(1, 1/delta).
struct PhysicalParams {
  double gamma = 0.0;
  double delta = 1.0;
  double h0 = 0.0;

  double clearance() const {
    return h0 > 0.0 ? h0 : 0.05 * std::min(1.0, 1.0 / delta);
  }

  // Throws std::invalid_argument on gamma < 0, delta <= 0, a degenerate
  // delta^2 == gamma (margin 1e-8), or an out-of-range clearance.
  void validate() const {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (std::abs(delta * delta - gamma) <= 1e-8)
      throw std::invalid_argument(
          "degenerate parameters: delta^2 == gamma (the long-wave amplitude "
          "scale vanishes); need |delta^2 - gamma| > 1e-8");
    if (h0 < 0.0 || h0 >= std::min(1.0, 1.0 / delta))
      throw std::invalid_argument("h0 must lie in [0, min(1, 1/delta))");
  }
};

}  // namespace gnsw
