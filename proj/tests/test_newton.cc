#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gnsw/energy.hpp"
#include "gnsw/newton.hpp"
#include "gnsw/operators.hpp"
#include "helpers.hpp"

using namespace gnsw;
using testutil::max_diff;

namespace {
const MultiplierSpec kId = MultiplierSpec::identity();
const PhysicalParams kOneLayer{0.0, 1.0, 0.0};
}  // namespace

TEST_SUITE("newton") {

TEST_CASE("explicit wave") {
  Grid g(230.0, 512);
  Profile z = gn_explicit(1.05, g);
  CHECK(z[g.N / 2] == doctest::Approx(1.05 * 1.05 - 1.0).epsilon(1e-14));
  CHECK(z.max_abs() == doctest::Approx(0.1025).epsilon(1e-14));
  CHECK_THROWS_AS(gn_explicit(1.0, g), std::domain_error);
  CHECK_THROWS_AS(gn_explicit(0.9, g), std::domain_error);

  bool tail_ok = true;
  gn_explicit(1.05, Grid(20.0, 64), &tail_ok);
  CHECK_FALSE(tail_ok);
}

TEST_CASE("long-wave guess") {
  Grid g(500.0, 512);
  // One layer: predicted amplitude collapses to 1 - 1/c^2.
  Profile z = kdv_guess(1.002, kOneLayer, g);
  CHECK(z[g.N / 2] == doctest::Approx(1.0 - 1.0 / (1.002 * 1.002)).epsilon(1e-12));
  CHECK(z[g.N / 2] > 0.0);

  // Two layers with gamma > delta^2: a wave of depression.
  PhysicalParams bi{1.0, 0.5, 0.0};
  Profile zb = kdv_guess(1.005, bi, g);
  CHECK(zb[g.N / 2] < 0.0);

  CHECK_THROWS_AS(kdv_guess(1.0, kOneLayer, g), std::domain_error);
  // Too fast for the ansatz: the predicted amplitude nears the guard.
  CHECK_THROWS_AS(kdv_guess(3.0, kOneLayer, g), std::domain_error);
}

TEST_CASE("newton refines the explicit wave in place") {
  // N=512 keeps coefficient truncation of the rational terms (whose
  // analyticity strip is narrower than the profile's own) below 1e-12;
  // at N=256 that truncation floor sits near 5e-8.  A small even
  // perturbation forces at least one genuine Newton step.
  Grid g = default_grid(1.05, kOneLayer, 512);
  Profile exact = gn_explicit(1.05, g);
  Profile guess = exact + 1e-4 * testutil::cosine(g, 3);
  NewtonResult r = newton_solve(guess, 1.05, kOneLayer, kId, kId);
  CHECK(r.converged);
  CHECK(r.wave.iterations <= 3);
  CHECK(max_diff(r.wave.profile, exact) < 1e-8);
  CHECK(r.wave.residual_norm < 1e-9);
  CHECK(r.wave.alpha == doctest::Approx(-1.0 / 1.1025).epsilon(1e-14));
  CHECK(r.wave.c == 1.05);
  CHECK(r.wave.q > 0.0);
  CHECK(r.wave.amplitude == doctest::Approx(0.1025).epsilon(1e-6));
  CHECK(r.cond_estimate > 0.0);
  CHECK(!r.residual_history.empty());
}

TEST_CASE("zero guess returns the trivial branch") {
  Grid g(100.0, 128);
  NewtonResult r = newton_solve(Profile(g), 1.1, kOneLayer, kId, kId);
  CHECK(r.converged);
  CHECK(r.wave.profile.max_abs() == 0.0);
  CHECK(r.wave.iterations == 0);
}

TEST_CASE("long-wave guess converges to the explicit branch") {
  const double c = 1.002;
  Grid g = default_grid(c, kOneLayer, 512);
  NewtonResult r = newton_solve(kdv_guess(c, kOneLayer, g), c, kOneLayer, kId, kId);
  CHECK(r.converged);
  CHECK(max_diff(r.wave.profile, gn_explicit(c, g)) < 1e-8);
}

TEST_CASE("improved-symbol wave stays near the long-wave prediction") {
  const double c = 1.01;
  PhysicalParams p = kOneLayer;
  Grid g = default_grid(c, p, 512);
  MultiplierSpec imp = MultiplierSpec::improved(1.0);
  Profile guess = kdv_guess(c, p, g);
  NewtonResult r = newton_solve(guess, c, p, imp, imp);
  CHECK(r.converged);
  const double predicted = guess[g.N / 2];
  CHECK(std::abs(r.wave.amplitude - predicted) < 0.2 * std::abs(predicted));

  // Converged wave satisfies the stationarity identity and is supercritical.
  CHECK(r.wave.alpha > -1.0);
  CHECK(r.wave.alpha < 0.0);
  Profile el = 0.5 * energy_gradient(r.wave.profile, p, imp, imp) +
               r.wave.alpha * (p.gamma + p.delta) * r.wave.profile;
  CHECK(el.max_abs() < 1e-9);

  // Evenness is built into the unknowns.
  const Profile& w = r.wave.profile;
  for (int j = 1; j < g.N; ++j)
    CHECK(w[j] == doctest::Approx(w[g.N - j]).epsilon(1e-13));
}

TEST_CASE("solutions are stable under grid refinement") {
  const double c = 1.02;
  Grid g = default_grid(c, kOneLayer, 512);
  NewtonResult coarse = newton_solve(kdv_guess(c, kOneLayer, g), c, kOneLayer, kId, kId);
  CHECK(coarse.converged);

  Grid g2(g.P, 2 * g.N);
  NewtonResult fine =
      newton_solve(resample(coarse.wave.profile, g2), c, kOneLayer, kId, kId);
  CHECK(fine.converged);
  double diff = 0.0;
  for (int j = 0; j < g.N; ++j)
    diff = std::max(diff, std::abs(coarse.wave.profile[j] - fine.wave.profile[2 * j]));
  CHECK(diff < 1e-8);
}

TEST_CASE("failure is reported, not hidden") {
  const double c = 1.05;
  Grid g = default_grid(c, kOneLayer, 256);
  SolverOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 1e-14;
  NewtonResult r = newton_solve(kdv_guess(c, kOneLayer, g), c, kOneLayer, kId, kId, opts);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.failure_reason.empty());
}

TEST_CASE("continuation along the explicit branch") {
  // One fixed grid must resolve the whole window: [1.01, 1.03] keeps the
  // wave's spectral tail below the solver tolerance at N = 512.
  SolverOptions opts;
  Grid g = default_grid(1.01, kOneLayer, 512);
  ContinuationResult cr =
      continue_in_speed(1.01, 1.03, 5, kOneLayer, kId, kId, opts, g);
  CHECK(cr.waves.size() == 5);
  CHECK_FALSE(cr.fold_detected);
  CHECK(cr.stop_reason.empty());
  CHECK(cr.c_last_good == doctest::Approx(1.03).epsilon(1e-12));
  for (const SolitaryWave& w : cr.waves) {
    CHECK(w.amplitude == doctest::Approx(w.c * w.c - 1.0).epsilon(1e-6));
    CHECK(w.residual_norm < 1e-9);
  }
}

TEST_CASE("continuation validates its window") {
  SolverOptions opts;
  Grid g(100.0, 128);
  CHECK_THROWS_AS(continue_in_speed(0.9, 1.05, 5, kOneLayer, kId, kId, opts, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(continue_in_speed(1.05, 1.01, 5, kOneLayer, kId, kId, opts, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(continue_in_speed(1.01, 1.05, 1, kOneLayer, kId, kId, opts, g),
                  std::invalid_argument);
}

TEST_CASE("bilayer branch: depression waves below the amplitude bound") {
  PhysicalParams p{1.0, 0.5, 0.0};
  SolverOptions opts;
  Grid g(300.0, 512);
  ContinuationResult cr = continue_in_speed(1.01, 1.03, 3, p, kId, kId, opts, g);
  CHECK(cr.waves.size() == 3);
  double prev = 0.0;
  for (const SolitaryWave& w : cr.waves) {
    CHECK(w.amplitude < 0.0);           // depression branch
    CHECK(w.amplitude > -0.5);          // strictly above the limiting amplitude
    CHECK(w.amplitude < prev);          // monotone along the branch
    prev = w.amplitude;
  }
  // Frozen reference amplitude at c = 1.01 (independent first-integral
  // quadrature of the one-dimensional wave ODE): -0.04196070.
  CHECK(cr.waves[0].amplitude == doctest::Approx(-0.04196070).epsilon(1e-5));
}

}  // TEST_SUITE("newton")
