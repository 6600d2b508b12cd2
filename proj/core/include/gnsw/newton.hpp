#pragma once

#include <string>
#include <vector>

#include "gnsw/grid.hpp"
#include "gnsw/multiplier.hpp"
#include "gnsw/params.hpp"

namespace gnsw {

struct SolverOptions {
  double tolerance = 1e-10;    // residual max-norm, scaled by max(1, |zeta|_inf)
  int max_iterations = 50;
  double damping = 0.5;        // backtracking factor
  int max_backtracks = 20;
  double jacobian_step = 1e-6; // scaled by (1 + |zeta|_inf)
  bool verbose = false;        // JSON-lines iteration trace on stderr
};

// A converged traveling wave. alpha = -1/c^2 by definition; amplitude is the
// signed value at the center node x = 0.
struct SolitaryWave {
  Profile profile;
  double c = 0.0;
  double alpha = 0.0;
  double q = 0.0;
  double residual_norm = 0.0;  // max norm
  double residual_l2 = 0.0;
  int iterations = 0;
  double amplitude = 0.0;
};

struct NewtonResult {
  SolitaryWave wave;           // last iterate (converged or not)
  bool converged = false;
  std::string failure_reason;
  std::vector<double> residual_history;
  double cond_estimate = 0.0;  // Jacobian condition proxy at the last solve
};

// The one-layer explicit solution (gamma = 0, delta = 1, identity symbols):
//   zeta(x) = (c^2-1) sech^2( (1/2) sqrt(3 (c^2-1)/c^2) x ).
// Requires c > 1. tail_ok reports whether the sampled tail at +-P/2 stays
// below 1e-12.
Profile gn_explicit(double c, const Grid& g, bool* tail_ok = nullptr);

// Long-wave initial guess: the q-scaled limit profile with
// q_est = ((1 - c^-2)/alpha0)^(3/2). Throws std::domain_error when the
// predicted amplitude gets within 80% of the cavitation margin (use
// continuation from a smaller speed instead).
Profile kdv_guess(double c, const PhysicalParams& p, const Grid& g);

// Damped Newton on the traveling-wave residual, posed on the even cosine
// subspace (kills the translation zero-mode and pins the phase). Jacobian by
// central finite differences in coefficient space, dense LU solve,
// backtracking on the residual max-norm. A zero guess returns the trivial
// solution unchanged.
NewtonResult newton_solve(const Profile& guess, double c, const PhysicalParams& p,
                          const MultiplierSpec& F1, const MultiplierSpec& F2,
                          const SolverOptions& opts = {});

struct ContinuationResult {
  std::vector<SolitaryWave> waves;
  bool fold_detected = false;
  double c_last_good = 0.0;
  std::string stop_reason;  // empty when the target speed was reached
};

// Marches from c_start to c_end in `steps` scheduled speeds, each converged
// wave seeding the next. On failure the step is halved; once the step has
// shrunk below 1e-5 (and below dc0/8) a branch endpoint (fold) is declared.
// An explicit seed may be supplied; by default the branch starts from
// kdv_guess.
ContinuationResult continue_in_speed(double c_start, double c_end, int steps,
                                     const PhysicalParams& p,
                                     const MultiplierSpec& F1, const MultiplierSpec& F2,
                                     const SolverOptions& opts, const Grid& g,
                                     const Profile* seed = nullptr);

// Domain-size heuristic: P = 60/kappa with kappa the long-wave decay rate at
// the estimated mass of speed c (soliton width grows like q^(-1/3)).
Grid default_grid(double c, const PhysicalParams& p, int N = 512);

}  // namespace gnsw
