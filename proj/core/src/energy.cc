#include "gnsw/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "gnsw/operators.hpp"

namespace gnsw {

namespace {

// dxF_i{zeta / h_i} for one layer.
Profile scaled_gradient(const Profile& zeta, const std::vector<double>& h,
                        const MultiplierSpec& F) {
  std::vector<double> u(zeta.size());
  for (int j = 0; j < zeta.size(); ++j) u[j] = zeta[j] / h[j];
  return apply_dxF(Profile(zeta.grid(), std::move(u)), F);
}

}  // namespace

double energy(const Profile& zeta, const PhysicalParams& p,
              const MultiplierSpec& F1, const MultiplierSpec& F2) {
  const LayerDepths d = layer_depths(zeta, p);
  const Profile g1 = scaled_gradient(zeta, d.h1, F1);
  const Profile g2 = scaled_gradient(zeta, d.h2, F2);
  double acc = 0.0;
  for (int j = 0; j < zeta.size(); ++j) {
    const double h1 = d.h1[j], h2 = d.h2[j], z = zeta[j];
    acc += (h1 + p.gamma * h2) / (h1 * h2) * z * z +
           (p.gamma / 3.0) * h1 * h1 * h1 * g1[j] * g1[j] +
           (1.0 / 3.0) * h2 * h2 * h2 * g2[j] * g2[j];
  }
  return acc * zeta.grid().dx();
}

Profile energy_gradient(const Profile& zeta, const PhysicalParams& p,
                        const MultiplierSpec& F1, const MultiplierSpec& F2) {
  const Grid& g = zeta.grid();
  const LayerDepths d = layer_depths(zeta, p);

  // dxF_i{ h_i^3 dxF_i{zeta/h_i} } for each layer.
  auto elliptic = [&](const std::vector<double>& h, const MultiplierSpec& F) {
    Profile t = scaled_gradient(zeta, h, F);
    std::vector<double> w(g.N);
    for (int j = 0; j < g.N; ++j) w[j] = h[j] * h[j] * h[j] * t[j];
    return apply_dxF(Profile(g, std::move(w)), F);
  };
  const Profile e1 = elliptic(d.h1, F1);
  const Profile e2 = elliptic(d.h2, F2);
  const Profile g1 = scaled_gradient(zeta, d.h1, F1);
  const Profile g2 = scaled_gradient(zeta, d.h2, F2);

  std::vector<double> out(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double h1 = d.h1[j], h2 = d.h2[j], z = zeta[j];
    const double hh = h1 * h2;
    out[j] = 2.0 * (h1 + p.gamma * h2) / hh * z -
             (h1 * h1 - p.gamma * h2 * h2) / (hh * hh) * z * z -
             (2.0 / (3.0 * p.delta)) / (h2 * h2) * e2[j] -
             (2.0 * p.gamma / 3.0) / (h1 * h1) * e1[j] +
             (h2 * g2[j]) * (h2 * g2[j]) - p.gamma * (h1 * g1[j]) * (h1 * g1[j]);
  }
  return Profile(g, std::move(out));
}

EnergyBreakdown energy_parts(const Profile& zeta, const PhysicalParams& p,
                             const MultiplierSpec& F1, const MultiplierSpec& F2) {
  const Grid& g = zeta.grid();
  const double dx = g.dx();
  const LayerDepths d = layer_depths(zeta, p);
  EnergyBreakdown b;
  b.total = energy(zeta, p, F1, F2);
  b.mass = mass(zeta, p);

  const Profile dz1 = apply_dxF(zeta, F1);
  const Profile dz2 = apply_dxF(zeta, F2);
  std::vector<double> zsq(g.N);
  for (int j = 0; j < g.N; ++j) zsq[j] = zeta[j] * zeta[j];
  const Profile z2(g, std::move(zsq));
  const Profile dz1s = apply_dxF(z2, F1);
  const Profile dz2s = apply_dxF(z2, F2);

  double e2 = 0.0, e3 = 0.0;
  for (int j = 0; j < g.N; ++j) {
    const double z = zeta[j];
    e2 += (p.gamma + p.delta) * z * z + (p.gamma / 3.0) * dz1[j] * dz1[j] +
          (1.0 /(3.0 * p.delta)) * dz2[j] * dz2[j];
    e3 += (p.gamma - p.delta * p.delta) * z * z * z -
          p.gamma * z * dz1[j] * dz1[j] + z * dz2[j] * dz2[j] +
          (2.0 * p.gamma / 3.0) * dz1[j] * dz1s[j] - (2.0 / 3.0) * dz2[j] * dz2s[j];
  }
  b.e2 = e2 * dx;
  b.e3 = e3 * dx;
  b.e_rem = b.total - b.e2 - b.e3;

  // <dE(zeta), zeta> by its own expanded quadrature (not by pairing the
  // gradient field): the two independent code paths back the identity tests.
  const Profile g1 = scaled_gradient(zeta, d.h1, F1);
  const Profile g2 = scaled_gradient(zeta, d.h2, F2);
  auto scaled2 = [&](const std::vector<double>& h, const MultiplierSpec& F) {
    std::vector<double> u(g.N);
    for (int j = 0; j < g.N; ++j) u[j] = zeta[j] / (h[j] * h[j]);
    return apply_dxF(Profile(g, std::move(u)), F);
  };
  const Profile q1 = scaled2(d.h1, F1);
  const Profile q2 = scaled2(d.h2, F2);
  double pr = 0.0;
  for (int j = 0; j < g.N; ++j) {
    const double h1 = d.h1[j], h2 = d.h2[j], z = zeta[j];
    const double hh = h1 * h2;
    pr += 2.0 * (h1 + p.gamma * h2) / hh * z * z -
          (h1 * h1 - p.gamma * h2 * h2) / (hh * hh) * z * z * z +
          (2.0 / (3.0 * p.delta)) * h2 * h2 * h2 * g2[j] * q2[j] +
          (2.0 * p.gamma / 3.0) * h1 * h1 * h1 * g1[j] * q1[j] +
          z * (h2 * g2[j]) * (h2 * g2[j]) - p.gamma * z * (h1 * g1[j]) * (h1 * g1[j]);
  }
  b.pairing = pr * dx;
  return b;
}

double energy_kdv(const Profile& xi, const PhysicalParams& p) {
  const Profile dx_xi = apply_dx_symbol(xi, [](double) { return 1.0; });
  double acc = 0.0;
  for (int j = 0; j < xi.size(); ++j) {
    const double z = xi[j];
    acc += (p.gamma - p.delta * p.delta) * z * z * z +
           (p.gamma + 1.0 / p.delta) / 3.0 * dx_xi[j] * dx_xi[j];
  }
  return acc * xi.grid().dx();
}

double mass(const Profile& zeta, const PhysicalParams& p) {
  const double n = hs_norm(zeta, 0.0);
  return (p.gamma + p.delta) * n * n;
}

std::pair<double, double> penalty(double t, const PenaltyConfig& cfg) {
  const double R2 = cfg.R * cfg.R;
  const double top = 4.0 * R2;  // (2R)^2
  if (t < 0.0) throw std::domain_error("penalty: negative squared norm");
  if (t <= R2) return {0.0, 0.0};
  if (t >= top) throw std::domain_error("penalty: squared norm left the constraint ball");
  const double v = std::exp(1.0 / (R2 - t)) / (top - t);
  const double dv = v * (1.0 / (top - t) + 1.0 / ((R2 - t) * (R2 - t)));
  return {v, dv};
}

}  // namespace gnsw
