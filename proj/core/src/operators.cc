#include "gnsw/operators.hpp"

#include <stdexcept>
#include <string>

namespace gnsw {

LayerDepths layer_depths(const Profile& zeta, const PhysicalParams& p) {
  const int N = zeta.size();
  LayerDepths d;
  d.h1.resize(N);
  d.h2.resize(N);
  double mn = INFINITY;
  const double inv_delta = 1.0 / p.delta;
  for (int j = 0; j < N; ++j) {
    d.h1[j] = 1.0 - zeta[j];
    d.h2[j] = inv_delta + zeta[j];
    mn = std::min(mn, std::min(d.h1[j], d.h2[j]));
  }
  d.min_depth = mn;
  if (mn < p.clearance())
    throw std::domain_error("cavitation: min layer depth " + std::to_string(mn) +
                            " below clearance " + std::to_string(p.clearance()));
  return d;
}

bool non_cavitating(const Profile& zeta, const PhysicalParams& p) {
  const double h0 = p.clearance();
  const double inv_delta = 1.0 / p.delta;
  for (int j = 0; j < zeta.size(); ++j) {
    if (1.0 - zeta[j] < h0 || inv_delta + zeta[j] < h0) return false;
  }
  return true;
}

Profile apply_dxF(const Profile& u, const MultiplierSpec& F) {
  return apply_dx_symbol(u, [&F](double k) { return F(k); });
}

Profile q_op(const std::vector<double>& h, const Profile& ubar,
             const MultiplierSpec& F, double h0) {
  const Grid& g = ubar.grid();
  if (static_cast<int>(h.size()) != g.N)
    throw std::invalid_argument("q_op: depth field size mismatch");
  for (double v : h)
    if (v < h0) throw std::domain_error("cavitation: layer depth below clearance");

  Profile t = apply_dxF(ubar, F);
  std::vector<double> w(g.N);
  for (int j = 0; j < g.N; ++j) w[j] = h[j] * h[j] * h[j] * t[j];
  t = apply_dxF(Profile(g, std::move(w)), F);
  std::vector<double> out(g.N);
  for (int j = 0; j < g.N; ++j) out[j] = -t[j] / (3.0 * h[j]);
  return Profile(g, std::move(out));
}

namespace {

// ubar_i = w / h_i at the nodes.
Profile layer_velocity(const Profile& w, const std::vector<double>& h) {
  std::vector<double> u(w.size());
  for (int j = 0; j < w.size(); ++j) u[j] = w[j] / h[j];
  return Profile(w.grid(), std::move(u));
}

}  // namespace

Profile a_op(const Profile& zeta, const Profile& w, const PhysicalParams& p,
             const MultiplierSpec& F1, const MultiplierSpec& F2) {
  if (zeta.grid() != w.grid()) throw std::invalid_argument("a_op: grid mismatch");
  const LayerDepths d = layer_depths(zeta, p);
  const double h0 = p.clearance();
  const Profile u2 = layer_velocity(w, d.h2);
  const Profile u1 = layer_velocity(w, d.h1);
  const Profile q2 = q_op(d.h2, u2, F2, h0);
  const Profile q1 = q_op(d.h1, u1, F1, h0);
  std::vector<double> out(w.size());
  for (int j = 0; j < w.size(); ++j)
    out[j] = (u2[j] + q2[j]) + p.gamma * (u1[j] + q1[j]);
  return Profile(w.grid(), std::move(out));
}

Profile r_op(const Profile& zeta, const Profile& w, const PhysicalParams& p,
             const MultiplierSpec& F1, const MultiplierSpec& F2) {
  if (zeta.grid() != w.grid()) throw std::invalid_argument("r_op: grid mismatch");
  const Grid& g = w.grid();
  const LayerDepths d = layer_depths(zeta, p);
  const double h0 = p.clearance();

  auto layer = [&](const std::vector<double>& h, const MultiplierSpec& F) {
    const Profile u = layer_velocity(w, h);
    const Profile qu = q_op(h, u, F, h0);    // = -(1/3) h^-1 dxF{h^3 dxF{u}}
    const Profile du = apply_dxF(u, F);
    std::vector<double> r(g.N);
    for (int j = 0; j < g.N; ++j) {
      const double hdu = h[j] * du[j];
      r[j] = -u[j] * qu[j] + 0.5 * hdu * hdu;
    }
    return r;
  };

  const std::vector<double> r2 = layer(d.h2, F2);
  const std::vector<double> r1 = layer(d.h1, F1);
  std::vector<double> out(g.N);
  for (int j = 0; j < g.N; ++j) out[j] = r2[j] - p.gamma * r1[j];
  return Profile(g, std::move(out));
}

Profile tw_residual(const Profile& zeta, double c, const PhysicalParams& p,
                    const MultiplierSpec& F1, const MultiplierSpec& F2) {
  const Grid& g = zeta.grid();
  const LayerDepths d = layer_depths(zeta, p);
  const Profile az = a_op(zeta, zeta, p, F1, F2);
  const Profile rz = r_op(zeta, zeta, p, F1, F2);
  const double c2 = c * c;
  std::vector<double> out(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double h1 = d.h1[j], h2 = d.h2[j], z = zeta[j];
    const double denom = (h1 * h2) * (h1 * h2);
    const double quad = (h1 * h1 - p.gamma * h2 * h2) / denom;
    out[j] = c2 * az[j] - (p.gamma + p.delta) * z - 0.5 * c2 * quad * z * z + c2 * rz[j];
  }
  return Profile(g, std::move(out));
}

}  // namespace gnsw
