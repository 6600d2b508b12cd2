#include "gnsw/newton.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gnsw/energy.hpp"
#include "gnsw/kdv.hpp"
#include "gnsw/operators.hpp"

namespace gnsw {

Profile gn_explicit(double c, const Grid& g, bool* tail_ok) {
  if (!(c > 1.0)) throw std::domain_error("gn_explicit: requires supercritical c > 1");
  const double a = c * c - 1.0;
  const double kappa = 0.5 * std::sqrt(3.0 * a / (c * c));
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double s = 1.0 / std::cosh(kappa * g.node(j));
    v[j] = a * s * s;
  }
  if (tail_ok) {
    const double s = 1.0 / std::cosh(kappa * 0.5 * g.P);
    *tail_ok = a * s * s < 1e-12;
  }
  return Profile(g, std::move(v));
}

Profile kdv_guess(double c, const PhysicalParams& p, const Grid& g) {
  if (!(c > 1.0)) throw std::domain_error("kdv_guess: requires supercritical c > 1");
  const KdVReference ref = kdv_reference(p);
  const double q_est = std::pow((1.0 - 1.0 / (c * c)) / ref.alpha0, 1.5);
  if (q_est == 0.0) return Profile(g);  // c = 1: the zero profile
  const double s = std::cbrt(q_est);
  const double amp = s * s * ref.amplitude;
  const double margin = std::min(1.0, 1.0 / p.delta) - p.clearance();
  if (std::abs(amp) > 0.8 * margin)
    throw std::domain_error(
        "kdv_guess: speed too far from 1 for the long-wave ansatz (amplitude " +
        std::to_string(amp) + " near the cavitation margin); seed by continuation "
        "from a smaller speed instead");
  const double kappa = ref.decay_kappa * s;
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double sech = 1.0 / std::cosh(kappa * g.node(j));
    v[j] = amp * sech * sech;
  }
  return Profile(g, std::move(v));
}

namespace {

// Even profiles have purely real coefficients in this grid convention; the
// Newton unknowns are those N/2+1 cosine coefficients.
Eigen::VectorXd to_unknowns(const Profile& u) {
  const int n = u.grid().n_modes();
  Eigen::VectorXd a(n);
  for (int m = 0; m < n; ++m) a[m] = u.coeffs()[m].real();
  return a;
}

Profile from_unknowns(const Grid& g, const Eigen::VectorXd& a) {
  std::vector<std::complex<double>> c(g.n_modes());
  for (int m = 0; m < g.n_modes(); ++m) c[m] = a[m];
  return Profile(g, c);
}

struct ResidualEval {
  Eigen::VectorXd r;   // cosine coefficients of the residual
  double max_norm = INFINITY;
  double l2_norm = INFINITY;
  Profile residual;
  bool ok = false;     // false when the iterate cavitates
};

ResidualEval eval_residual(const Grid& g, const Eigen::VectorXd& a, double c,
                           const PhysicalParams& p, const MultiplierSpec& F1,
                           const MultiplierSpec& F2) {
  ResidualEval e;
  try {
    const Profile zeta = from_unknowns(g, a);
    e.residual = tw_residual(zeta, c, p, F1, F2);
    e.r = to_unknowns(e.residual);
    e.max_norm = e.residual.max_abs();
    e.l2_norm = hs_norm(e.residual, 0.0);
    e.ok = true;
  } catch (const std::domain_error&) {
    e.ok = false;
  }
  return e;
}

SolitaryWave make_wave(const Profile& zeta, double c, const PhysicalParams& p,
                       double rmax, double rl2, int iters) {
  SolitaryWave w;
  w.profile = zeta;
  w.c = c;
  w.alpha = -1.0 / (c * c);
  w.q = mass(zeta, p);
  w.residual_norm = rmax;
  w.residual_l2 = rl2;
  w.iterations = iters;
  w.amplitude = zeta[zeta.grid().N / 2];  // node at x = 0
  return w;
}

}  // namespace

NewtonResult newton_solve(const Profile& guess, double c, const PhysicalParams& p,
                          const MultiplierSpec& F1, const MultiplierSpec& F2,
                          const SolverOptions& opts) {
  p.validate();
  const Grid& g = guess.grid();
  NewtonResult out;

  if (guess.max_abs() == 0.0) {
    out.wave = make_wave(Profile(g), c, p, 0.0, 0.0, 0);
    out.converged = true;
    return out;
  }
  if (!non_cavitating(guess, p))
    throw std::domain_error("newton_solve: initial guess violates non-cavitation");

  const int n = g.n_modes();
  Eigen::VectorXd a = to_unknowns(symmetrize(guess));
  ResidualEval cur = eval_residual(g, a, c, p, F1, F2);
  if (!cur.ok) throw std::domain_error("newton_solve: guess residual not evaluable");

  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    const Profile zeta = from_unknowns(g, a);
    const double tol = opts.tolerance * std::max(1.0, zeta.max_abs());
    out.residual_history.push_back(cur.max_norm);
    if (cur.max_norm < tol) {
      out.wave = make_wave(zeta, c, p, cur.max_norm, cur.l2_norm, iter);
      out.converged = true;
      return out;
    }
    if (iter == opts.max_iterations) break;

    // Central-difference Jacobian, column by column in coefficient space.
    const double h = opts.jacobian_step * (1.0 + zeta.max_abs());
    Eigen::MatrixXd J(n, n);
    bool jac_ok = true;
    for (int m = 0; m < n && jac_ok; ++m) {
      Eigen::VectorXd ap = a, am = a;
      ap[m] += h;
      am[m] -= h;
      const ResidualEval rp = eval_residual(g, ap, c, p, F1, F2);
      const ResidualEval rm = eval_residual(g, am, c, p, F1, F2);
      if (!rp.ok || !rm.ok) {
        jac_ok = false;
        break;
      }
      J.col(m) = (rp.r - rm.r) / (2.0 * h);
    }
    if (!jac_ok) {
      out.failure_reason = "cavitation while forming the Jacobian";
      break;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const auto& U = lu.matrixLU();
    double dmax = 0.0, dmin = INFINITY;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(U(i, i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    out.cond_estimate = dmin > 0.0 ? dmax / dmin : INFINITY;
    if (!(out.cond_estimate < 1e14)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", out.cond_estimate);
      out.failure_reason = std::string("singular Jacobian (cond ~ ") + buf +
                           "), likely at a branch endpoint";
      break;
    }
    const Eigen::VectorXd step = lu.solve(-cur.r);

    // Backtracking on the residual max-norm; cavitating trials are rejected
    // the same way as non-decreasing ones.
    double s = 1.0;
    ResidualEval next;
    bool accepted = false;
    for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
      next = eval_residual(g, a + s * step, c, p, F1, F2);
      if (next.ok && next.max_norm < cur.max_norm) {
        accepted = true;
        break;
      }
      s *= opts.damping;
    }
    if (opts.verbose)
      std::fprintf(stderr,
                   "{\"iter\":%d,\"residual\":%.17g,\"damping\":%.17g}\n",
                   iter + 1, cur.max_norm, s);
    if (!accepted) {
      out.failure_reason = "damping exhausted without residual decrease";
      break;
    }
    a += s * step;
    cur = next;
  }

  if (out.failure_reason.empty())
    out.failure_reason = "max iterations exceeded";
  const Profile zeta = from_unknowns(g, a);
  const int completed = static_cast<int>(out.residual_history.size()) - 1;
  out.wave = make_wave(zeta, c, p, cur.max_norm, cur.l2_norm, std::max(completed, 0));
  out.converged = false;
  return out;
}

ContinuationResult continue_in_speed(double c_start, double c_end, int steps,
                                     const PhysicalParams& p,
                                     const MultiplierSpec& F1, const MultiplierSpec& F2,
                                     const SolverOptions& opts, const Grid& g,
                                     const Profile* seed) {
  if (!(c_start > 1.0)) throw std::invalid_argument("continue_in_speed: c_start must be > 1");
  if (!(c_end > c_start)) throw std::invalid_argument("continue_in_speed: need c_end > c_start");
  if (steps < 2) throw std::invalid_argument("continue_in_speed: need >= 2 steps");

  ContinuationResult out;
  const Profile first_guess = seed ? *seed : kdv_guess(c_start, p, g);
  NewtonResult first = newton_solve(first_guess, c_start, p, F1, F2, opts);
  if (!first.converged) {
    out.stop_reason = "seed solve failed: " + first.failure_reason;
    return out;
  }
  out.waves.push_back(first.wave);
  out.c_last_good = c_start;

  const double dc0 = (c_end - c_start) / (steps - 1);
  double dc = dc0;
  double c_cur = c_start;
  while (c_cur < c_end - 1e-14) {
    const double c_try = std::min(c_cur + dc, c_end);
    NewtonResult res;
    try {
      res = newton_solve(out.waves.back().profile, c_try, p, F1, F2, opts);
    } catch (const std::domain_error&) {
      res.converged = false;
      res.failure_reason = "cavitation";
    }
    // The trivial solution solves the equation at every speed, so a Newton
    // "success" that lost most of the seed's amplitude is a jump off the
    // branch, not a continuation step.
    if (res.converged &&
        std::abs(res.wave.amplitude) < 0.5 * std::abs(out.waves.back().amplitude)) {
      res.converged = false;
      res.failure_reason = "amplitude collapse (left the solution branch)";
    }
    if (res.converged) {
      out.waves.push_back(res.wave);
      out.c_last_good = c_try;
      c_cur = c_try;
      dc = std::min(dc * 2.0, dc0);
    } else {
      dc *= 0.5;
      // Near a branch endpoint the step keeps halving: occasional successes
      // advance c by less than dc and immediately hit the wall again, so the
      // signature is dc shrinking far below the schedule, not an unbroken
      // run of failures (successes would reset any such run forever).
      if (dc < 1e-5 && dc <= dc0 / 8.0) {
        out.fold_detected = true;
        out.stop_reason = "fold: Newton failed after step halving (" +
                          res.failure_reason + ")";
        break;
      }
      if (dc < 1e-12) {
        out.stop_reason = "step underflow: " + res.failure_reason;
        break;
      }
    }
  }
  return out;
}

Grid default_grid(double c, const PhysicalParams& p, int N) {
  const KdVReference ref = kdv_reference(p);
  const double q_est = std::pow(std::max(1.0 - 1.0 / (c * c), 1e-12) / ref.alpha0, 1.5);
  const double kappa = ref.decay_kappa * std::cbrt(q_est);
  return Grid(60.0 / kappa, N);
}

}  // namespace gnsw
