#pragma once

#include <vector>

#include "gnsw/grid.hpp"
#include "gnsw/multiplier.hpp"
#include "gnsw/params.hpp"

namespace gnsw {

// Nodal layer depths h1 = 1 - zeta (upper), h2 = 1/delta + zeta (lower).
struct LayerDepths {
  std::vector<double> h1, h2;
  double min_depth = 0.0;
};

// Computes the depths and enforces the non-cavitation guard: every node must
// keep h1, h2 >= p.clearance(). Throws std::domain_error on violation.
LayerDepths layer_depths(const Profile& zeta, const PhysicalParams& p);

bool non_cavitating(const Profile& zeta, const PhysicalParams& p);

// The F-modified derivative dxF
Profile apply_dxF(const Profile& u, const MultiplierSpec& F);

// Q[h] ubar = -(1/3) h^-1 dxF{ h^3 dxF{ubar} }, evaluated in exactly that
// order (spectral derivative, nodal cube multiply, spectral derivative,
// nodal divide). h must respect the clearance h0.
Profile q_op(const std::vector<double>& h, const Profile& ubar,
             const MultiplierSpec& F, double h0);

// A[zeta] w = (id + Q[h2])(w/h2) + gamma (id + Q[h1])(w/h1): the symmetric
// elliptic part of the model, linear in w.
Profile a_op(const Profile& zeta, const Profile& w, const PhysicalParams& p,
             const MultiplierSpec& F1, const MultiplierSpec& F2);

// R[zeta] w: the quadratic part,
//   R_i[h, u] = (1/3) u h^-1 dxF{h^3 dxF{u}} + (1/2) (h dxF{u})^2
// combined as R_2[h2, w/h2] - gamma R_1[h1, w/h1].
Profile r_op(const Profile& zeta, const Profile& w, const PhysicalParams& p,
             const MultiplierSpec& F1, const MultiplierSpec& F2);

// Traveling-wave residual at speed c:
//   c^2 A[zeta] zeta - (gamma+delta) zeta
//     - (c^2/2) (h1^2 - gamma h2^2)/(h1 h2)^2 zeta^2 + c^2 R[zeta] zeta,
// identically zero on solitary waves.
Profile tw_residual(const Profile& zeta, double c, const PhysicalParams& p,
                    const MultiplierSpec& F1, const MultiplierSpec& F2);

}  // namespace gnsw
