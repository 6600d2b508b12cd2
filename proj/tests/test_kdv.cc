#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gnsw/energy.hpp"
#include "gnsw/kdv.hpp"
#include "gnsw/newton.hpp"
#include "helpers.hpp"

using namespace gnsw;
using testutil::max_diff;

namespace {

// The same normalization constant through the other algebraic route:
//   (3/4) ((delta^2-gamma)^4 / ((gamma+delta)(gamma+1/delta)))^{1/3} / (gamma+delta)^{4/3}
// (the (gamma+delta)^{4/3} enters as (gamma+delta) * (gamma+delta)^{1/3}).
double alpha0_alt(const PhysicalParams& p) {
  const double gd = p.gamma + p.delta;
  const double gdi = p.gamma + 1.0 / p.delta;
  const double d2g = p.delta * p.delta - p.gamma;
  return 0.75 * std::cbrt(d2g * d2g * d2g * d2g / (gd * gdi)) / (gd * std::cbrt(gd));
}

}  // namespace

TEST_SUITE("kdv") {

TEST_CASE("normalization constant") {
  // One-layer case: every factor collapses to 1 and alpha0 = 3/4 exactly.
  CHECK(alpha0(PhysicalParams{0.0, 1.0, 0.0}) == doctest::Approx(0.75).epsilon(1e-15));

  // Two-layer reference point, frozen from arbitrary-precision evaluation:
  // (3/4) (0.31640625 / (7.59375 * 3))^{1/3}.
  CHECK(alpha0(PhysicalParams{1.0, 0.5, 0.0}) ==
        doctest::Approx(0.180281196288426).epsilon(1e-12));

  // Degenerate delta^2 == gamma has no long-wave scale.
  CHECK_THROWS_AS(alpha0(PhysicalParams{0.25, 0.5, 0.0}), std::invalid_argument);

  // The two printed forms of the constant are the same function.
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> ug(0.0, 2.0), ud(0.25, 2.0);
  int checked = 0;
  while (checked < 100) {
    PhysicalParams p{ug(rng), ud(rng), 0.0};
    if (std::abs(p.delta * p.delta - p.gamma) <= 1e-6) continue;
    const double a = alpha0(p);
    const double b = alpha0_alt(p);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    ++checked;
  }
}

TEST_CASE("reference wave data") {
  PhysicalParams p1{0.0, 1.0, 0.0};
  KdVReference r1 = kdv_reference(p1);
  CHECK(r1.alpha0 == doctest::Approx(0.75));
  CHECK(r1.amplitude == doctest::Approx(0.75));     // elevation: delta^2 > gamma
  CHECK(r1.decay_kappa == doctest::Approx(0.75));   // (1/2) sqrt(3 * 0.75)
  CHECK(r1.i_kdv == doctest::Approx(-0.45));        // -(3/5) alpha0

  PhysicalParams p2{1.0, 0.5, 0.0};
  KdVReference r2 = kdv_reference(p2);
  CHECK(r2.amplitude < 0.0);                        // depression: delta^2 < gamma
  CHECK(r2.amplitude ==
        doctest::Approx(r2.alpha0 * 1.5 / (0.25 - 1.0)).epsilon(1e-13));
  CHECK(r2.decay_kappa ==
        doctest::Approx(0.5 * std::sqrt(3.0 * r2.alpha0 * 1.5 / 3.0)).epsilon(1e-13));
}

TEST_CASE("limit profile solves the limiting equation") {
  for (PhysicalParams p : {PhysicalParams{0.0, 1.0, 0.0}, PhysicalParams{1.0, 0.5, 0.0}}) {
    Grid g(p.gamma == 0.0 ? 80.0 : 200.0, 512);
    bool tail_ok = false;
    Profile xi = xi_kdv(g, p, &tail_ok);
    CHECK(tail_ok);

    // alpha0 (gamma+delta) xi + (3/2)(gamma-delta^2) xi^2 - ((gamma+1/delta)/3) xi''
    const double a0 = alpha0(p);
    Profile xi2(g, [&] {
      std::vector<double> v(g.N);
      for (int j = 0; j < g.N; ++j) v[j] = xi[j] * xi[j];
      return v;
    }());
    Profile ddxi = apply_even_symbol(xi, [](double k) { return -k * k; });
    Profile res = a0 * (p.gamma + p.delta) * xi +
                  1.5 * (p.gamma - p.delta * p.delta) * xi2 -
                  ((p.gamma + 1.0 / p.delta) / 3.0) * ddxi;
    CHECK(res.max_abs() < 1e-10);

    // Unit constraint and limiting energy value.
    const double m = (p.gamma + p.delta) * hs_norm(xi, 0.0) * hs_norm(xi, 0.0);
    CHECK(std::abs(m - 1.0) < 1e-8);
    CHECK(std::abs(energy_kdv(xi, p) - (-0.6 * a0)) < 1e-8);
  }

  bool tail_ok = true;
  xi_kdv(Grid(10.0, 64), PhysicalParams{1.0, 0.5, 0.0}, &tail_ok);
  CHECK_FALSE(tail_ok);  // far too short a box for the K = 0.26 decay
}

TEST_CASE("mass rescaling is a grid relabeling") {
  Grid g(80.0, 256);
  PhysicalParams p{0.0, 1.0, 0.0};
  Profile xi = xi_kdv(g, p);
  const double q = 0.01;

  Profile z = rescale_from_kdv(xi, q);
  CHECK(z.grid().N == g.N);
  CHECK(z.grid().P == doctest::Approx(g.P / std::cbrt(q)).epsilon(1e-15));
  CHECK(z.max_abs() ==
        doctest::Approx(std::pow(q, 2.0 / 3.0) * xi.max_abs()).epsilon(1e-15));

  // ||zeta||^2 = q ||xi||^2 turns the unit constraint into mass q.
  CHECK(mass(z, p) == doctest::Approx(q * mass(xi, p)).epsilon(1e-12));

  Profile back = rescale_to_kdv(z, q);
  CHECK(back.grid().P == doctest::Approx(g.P).epsilon(1e-15));
  CHECK(max_diff(back, xi) < 1e-14);

  CHECK_THROWS_AS(rescale_from_kdv(xi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rescale_to_kdv(z, -1.0), std::invalid_argument);
}

TEST_CASE("distance to the limit profile") {
  Grid g(80.0, 512);
  PhysicalParams p{0.0, 1.0, 0.0};
  Profile xi = xi_kdv(g, p);
  const double q = 0.01;
  Profile z = rescale_from_kdv(xi, q);

  auto [err, shift] = h1_distance_to_kdv(z, q, p);
  CHECK(err < 1e-8);
  CHECK(std::abs(shift) < 1e-3);

  // A translate is recognized: the shift comes back (in limit-frame units;
  // the input moved by 3.7 q^{-1/3}) and the error collapses to the shift
  // resolution (1e-6 P bracket times the profile's H^1 slope).
  Profile zs = fourier_shift(z, 3.7 / std::cbrt(q));
  auto [err2, shift2] = h1_distance_to_kdv(zs, q, p);
  CHECK(err2 < 1e-4);
  CHECK(std::abs(shift2 - 3.7) < 1e-3);

  CHECK_THROWS_AS(h1_distance_to_kdv(Profile(g), q, p), std::invalid_argument);
}

TEST_CASE("explicit family converges to the limit profile") {
  PhysicalParams p{0.0, 1.0, 0.0};
  std::vector<double> qs, errs;
  for (double c : {1.002, 1.01, 1.04}) {
    Grid g = default_grid(c, p, 1024);
    Profile z = gn_explicit(c, g);
    const double q = mass(z, p);
    qs.push_back(q);
    errs.push_back(h1_distance_to_kdv(z, q, p).first);
  }
  // Error shrinks with q (frozen reference run: 0.0031, 0.0154, 0.0597).
  CHECK(errs[0] < errs[1]);
  CHECK(errs[1] < errs[2]);
  CHECK(errs[0] > 0.0025);
  CHECK(errs[0] < 0.0037);
  CHECK(errs[2] > 0.055);
  CHECK(errs[2] < 0.065);
}

TEST_CASE("amplitude-speed relation approaches the long-wave slope") {
  // alpha + 1 = alpha0 q^{2/3} + higher order along the explicit branch.
  PhysicalParams p{0.0, 1.0, 0.0};
  std::vector<double> qs, vals;
  for (double c : {1.0005, 1.001, 1.002, 1.004}) {
    Grid g = default_grid(c, p, 1024);
    Profile z = gn_explicit(c, g);
    qs.push_back(mass(z, p));
    vals.push_back(1.0 - 1.0 / (c * c));  // alpha + 1 with alpha = -1/c^2
  }
  RateFit fit = fit_rate(qs, vals);
  CHECK(std::abs(fit.exponent - 2.0 / 3.0) < 0.05);
  CHECK(std::abs(fit.prefactor - 0.75) < 0.075);  // within 10% of alpha0
}

TEST_CASE("energy expansion along the explicit family") {
  // |E - q - q^{5/3} i_kdv| / q^2 stays bounded as q -> 0.
  PhysicalParams p{0.0, 1.0, 0.0};
  const MultiplierSpec id = MultiplierSpec::identity();
  std::vector<double> qs, ratios;
  for (double c : {1.002, 1.005, 1.01, 1.02, 1.04}) {
    Grid g = default_grid(c, p, 1024);
    Profile z = gn_explicit(c, g);
    const double q = mass(z, p);
    const double e = energy(z, p, id, id);
    qs.push_back(q);
    ratios.push_back(std::abs(e - q - std::pow(q, 5.0 / 3.0) * (-0.45)) / (q * q));
  }
  for (double r : ratios) CHECK(r < 1.0);
  // No growth toward small q: the smallest-q ratio is the smallest overall.
  CHECK(ratios.front() <= ratios.back());
}

TEST_CASE("rate fitting") {
  std::vector<double> qs{1e-4, 1e-3, 1e-2, 1e-1};

  std::vector<double> errs;
  for (double q : qs) errs.push_back(2.0 * std::pow(q, 0.5));
  RateFit f = fit_rate(qs, errs);
  CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

  // Mild multiplicative noise moves the exponent only slightly.
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  errs.clear();
  for (double q : qs) errs.push_back(std::pow(q, 2.0 / 3.0) * (1.0 + u(rng)));
  f = fit_rate(qs, errs);
  CHECK(std::abs(f.exponent - 2.0 / 3.0) < 0.05);

  // Constant data: zero exponent, and r2 = 1 by convention (no variance).
  f = fit_rate(qs, {3.0, 3.0, 3.0, 3.0});
  CHECK(f.exponent == doctest::Approx(0.0));
  CHECK(f.r2 == 1.0);

  CHECK_THROWS_AS(fit_rate({1e-3, 1e-2, 1e-1}, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(qs, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(qs, {1.0, 2.0, 3.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({1e-3, 1e-2, 1e-1, -1.0}, {1.0, 2.0, 3.0, 4.0}),
                  std::invalid_argument);
}

TEST_CASE("domain heuristic") {
  PhysicalParams p{0.0, 1.0, 0.0};
  Grid g1 = default_grid(1.002, p);
  Grid g2 = default_grid(1.01, p);
  Grid g3 = default_grid(1.05, p);
  CHECK(g1.N == 512);
  CHECK(g1.P > g2.P);  // slower waves are wider
  CHECK(g2.P > g3.P);
  CHECK(default_grid(1.05, p, 256).N == 256);
  // Wide enough that the explicit wave fits with room to spare.
  bool tail_ok = false;
  gn_explicit(1.05, g3, &tail_ok);
  CHECK(tail_ok);
}

}  // TEST_SUITE("kdv")
