#include "gnsw/kdv.hpp"

#include <cmath>
#include <stdexcept>

namespace gnsw {

double alpha0(const PhysicalParams& p) {
  p.validate();  // rejects the degenerate delta^2 == gamma
  const double gd = p.gamma + p.delta;
  const double gdi = p.gamma + 1.0 / p.delta;
  const double d2g = p.delta * p.delta - p.gamma;
  return 0.75 * std::cbrt(d2g * d2g * d2g * d2g / (gd * gd * gd * gd * gd * gdi));
}

KdVReference kdv_reference(const PhysicalParams& p) {
  KdVReference r;
  r.alpha0 = alpha0(p);
  const double gd = p.gamma + p.delta;
  r.amplitude = r.alpha0 * gd / (p.delta * p.delta - p.gamma);
  r.decay_kappa = 0.5 * std::sqrt(3.0 * r.alpha0 * gd / (p.gamma + 1.0 / p.delta));
  r.i_kdv = -0.6 * r.alpha0;
  return r;
}

Profile xi_kdv(const Grid& g, const PhysicalParams& p, bool* tail_ok) {
  const KdVReference r = kdv_reference(p);
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double s = 1.0 / std::cosh(r.decay_kappa * g.node(j));
    v[j] = r.amplitude * s * s;
  }
  if (tail_ok) {
    const double s = 1.0 / std::cosh(r.decay_kappa * 0.5 * g.P);
    *tail_ok = std::abs(r.amplitude) * s * s < 1e-12;
  }
  return Profile(g, std::move(v));
}

Profile rescale_from_kdv(const Profile& xi, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("rescale_from_kdv: q must be > 0");
  const double s = std::cbrt(q);
  const Grid to(xi.grid().P / s, xi.grid().N);
  std::vector<double> v(xi.values());
  for (double& x : v) x *= s * s;
  return Profile(to, std::move(v));
}

Profile rescale_to_kdv(const Profile& zeta, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("rescale_to_kdv: q must be > 0");
  const double s = std::cbrt(q);
  const Grid to(zeta.grid().P * s, zeta.grid().N);
  std::vector<double> v(zeta.values());
  for (double& x : v) x /= s * s;
  return Profile(to, std::move(v));
}

std::pair<double, double> h1_distance_to_kdv(const Profile& zeta, double q,
                                             const PhysicalParams& p) {
  if (zeta.max_abs() == 0.0)
    throw std::invalid_argument("h1_distance_to_kdv: trivial profile");
  const Profile xi_hat = rescale_to_kdv(zeta, q);
  const Grid& g = xi_hat.grid();
  const Profile ref = xi_kdv(g, p);

  auto err = [&](double x0) { return hs_norm(xi_hat - fourier_shift(ref, x0), 1.0); };

  // Scan at node resolution, then golden-section inside the bracketing nodes.
  double best_x = 0.0, best_e = INFINITY;
  for (int j = 0; j < g.N; ++j) {
    const double e = err(g.node(j));
    if (e < best_e) {
      best_e = e;
      best_x = g.node(j);
    }
  }
  double a = best_x - g.dx(), b = best_x + g.dx();
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = err(x1), f2 = err(x2);
  while (b - a > 1e-6 * g.P) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = err(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = err(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {err(xm), xm};
}

RateFit fit_rate(const std::vector<double>& qs, const std::vector<double>& errors) {
  if (qs.size() != errors.size() || qs.size() < 4)
    throw std::invalid_argument("fit_rate: need >= 4 (q, error) pairs");
  const int n = static_cast<int>(qs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    if (!(qs[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("fit_rate: data must be strictly positive");
    const double x = std::log(qs[i]), y = std::log(errors[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  RateFit f;
  const double den = n * sxx - sx * sx;
  f.exponent = (n * sxy - sx * sy) / den;
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = std::log(errors[i]) -
                     (std::log(f.prefactor) + f.exponent * std::log(qs[i]));
    ss_res += r * r;
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace gnsw
