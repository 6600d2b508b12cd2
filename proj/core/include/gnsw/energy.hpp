#pragma once

#include <utility>

#include "gnsw/grid.hpp"
#include "gnsw/multiplier.hpp"
#include "gnsw/params.hpp"

namespace gnsw {

// One energy evaluation split into its homogeneous parts. Each field is
// computed by its own quadrature; e_rem is defined by subtraction, so
// total == e2 + e3 + e_rem holds exactly.
struct EnergyBreakdown {
  double total = 0.0;
  double e2 = 0.0;      // quadratic part
  double e3 = 0.0;      // cubic part
  double e_rem = 0.0;   // total - e2 - e3 (quartic and higher)
  double mass = 0.0;    // q = (gamma+delta) ||zeta||^2
  double pairing = 0.0; // <dE(zeta), zeta>
};

// E(zeta): quadrature of
//   (h1 + gamma h2)/(h1 h2) zeta^2 + (gamma/3) h1^3 (dxF1{zeta/h1})^2
//     + (1/3) h2^3 (dxF2{zeta/h2})^2.
// Equals <zeta, A[zeta] zeta>; strictly positive away from zero.
double energy(const Profile& zeta, const PhysicalParams& p,
              const MultiplierSpec& F1, const MultiplierSpec& F2);

// dE(zeta), the L^2 gradient: nodal field
//   2 (h1+gamma h2)/(h1 h2) zeta - (h1^2-gamma h2^2)/(h1 h2)^2 zeta^2
//   - (2/(3 delta)) h2^-2 dxF2{h2^3 dxF2{zeta/h2}}
//   - (2 gamma/3) h1^-2 dxF1{h1^3 dxF1{zeta/h1}}
//   + (h2 dxF2{zeta/h2})^2 - gamma (h1 dxF1{zeta/h1})^2.
Profile energy_gradient(const Profile& zeta, const PhysicalParams& p,
                        const MultiplierSpec& F1, const MultiplierSpec& F2);

EnergyBreakdown energy_parts(const Profile& zeta, const PhysicalParams& p,
                             const MultiplierSpec& F1, const MultiplierSpec& F2);

// The limiting functional int (gamma - delta^2) xi^3 + ((gamma + 1/delta)/3) (xi')^2.
double energy_kdv(const Profile& xi, const PhysicalParams& p);

// (gamma + delta) ||zeta||_{L^2}^2.
double mass(const Profile& zeta, const PhysicalParams& p);

// Penalty barrier on the squared H^nu norm: zero on [0, R^2], then
// rho(t) = exp(1/(R^2-t)) / ((2R)^2 - t), blowing up at (2R)^2 (beyond which
// the constraint ball is left: std::domain_error).
struct PenaltyConfig {
  double R = 1.0;
};

// Returns {rho(t), rho'(t)}.
std::pair<double, double> penalty(double t, const PenaltyConfig& cfg);

}  // namespace gnsw
