#pragma once

#include <array>
#include <string>
#include <vector>

#include "gnsw/grid.hpp"
#include "gnsw/multiplier.hpp"
#include "gnsw/params.hpp"

namespace gnsw {

struct MinimizeOptions {
  double tol = 1e-8;          // tangent-gradient max-norm, scaled by (1+|value|)
  long max_iterations = 100000;
  double armijo = 1e-4;       // sufficient-decrease constant
  double backtrack = 0.5;
  double nu = 1.0;            // penalty Sobolev index (needs nu > 1/2)
  double R = 0.0;             // penalty radius; 0 -> default 10*sqrt(q)
  bool record_trace = false;
};

struct MinimizeResult {
  Profile profile;
  double alpha = 0.0;        // Lagrange multiplier, -<g, zeta>/(2q)
  double value = 0.0;        // E at the minimizer (penalty excluded)
  double q = 0.0;
  bool penalty_active = false;
  double el_residual = 0.0;  // max-norm of dE + penalty term + 2 alpha (gamma+delta) zeta
  long iterations = 0;
  bool converged = false;
  std::string stop_reason;
  // (iteration, objective, tangent-gradient max-norm, penalty value) rows,
  // recorded when record_trace is set.
  std::vector<std::array<double, 4>> trace;
};

// zeta * sqrt(q / mass(zeta)); rejects the zero profile.
Profile project_sphere(const Profile& zeta, double q, const PhysicalParams& p);

// Projected gradient descent for the penalized energy on the mass sphere
// {(gamma+delta)||zeta||^2 = q}: step along the tangent part of
// dE + 2 rho'(||zeta||_{H^nu}^2) (1+k^2)^nu zeta, Armijo backtracking,
// re-projection after every step. Starts from a mass-q single-bump sech^2
// profile of the appropriate sign.
MinimizeResult minimize(const Grid& g, double q, const PhysicalParams& p,
                        const MultiplierSpec& F1, const MultiplierSpec& F2,
                        const MinimizeOptions& opts = {});

// alpha = -<dE(zeta), zeta> / (2 (gamma+delta) ||zeta||^2), the multiplier a
// stationary point of the constrained problem must carry.
double lagrange_multiplier(const Profile& zeta, const PhysicalParams& p,
                           const MultiplierSpec& F1, const MultiplierSpec& F2);

}  // namespace gnsw
