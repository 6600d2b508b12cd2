#pragma once

#include <utility>
#include <vector>

#include "gnsw/grid.hpp"
#include "gnsw/params.hpp"

namespace gnsw {

// The long-wave limit objects: the normalized sech^2 ground state
//   xi(x) = A sech^2(K x),  A = alpha0 (gamma+delta)/(delta^2-gamma),
//                           K = (1/2) sqrt(3 alpha0 (gamma+delta)/(gamma+1/delta)),
// with alpha0 fixed by the constraint (gamma+delta)||xi||^2 = 1, which gives
//   alpha0 = (3/4) ((delta^2-gamma)^4 / ((gamma+delta)^5 (gamma+1/delta)))^(1/3)
// and the limiting energy value i_kdv = -(3/5) alpha0.
struct KdVReference {
  double alpha0 = 0.0;
  double amplitude = 0.0;    // signed: elevation iff delta^2 > gamma
  double decay_kappa = 0.0;  // K above
  double i_kdv = 0.0;
};

double alpha0(const PhysicalParams& p);
KdVReference kdv_reference(const PhysicalParams& p);

// xi sampled on the grid, centered at 0. tail_ok (if given) reports whether
// the sampled tail at +-P/2 is below 1e-12.
Profile xi_kdv(const Grid& g, const PhysicalParams& p, bool* tail_ok = nullptr);

// The mass-q scaling zeta(x) = q^(2/3) xi(q^(1/3) x) and its inverse: pure
// grid relabelings (period scales by q^(-/+1/3), N unchanged), exact on the
// nodes. ||zeta||^2 = q ||xi||^2, so a unit-constraint xi maps to mass q.
Profile rescale_from_kdv(const Profile& xi, double q);
Profile rescale_to_kdv(const Profile& zeta, double q);

// Rescales zeta to the limit frame and minimizes ||. - xi(. - x0)||_{H^1}
// over the shift x0 (node-resolution scan, then golden-section refinement to
// 1e-6 * P). Returns {error, shift}.
std::pair<double, double> h1_distance_to_kdv(const Profile& zeta, double q,
                                             const PhysicalParams& p);

struct RateFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
};

// Least-squares fit log(error) = log(prefactor) + exponent * log(q).
// Requires >= 4 strictly positive pairs.
RateFit fit_rate(const std::vector<double>& qs, const std::vector<double>& errors);

}  // namespace gnsw
