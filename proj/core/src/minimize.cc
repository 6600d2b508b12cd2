#include "gnsw/minimize.hpp"

#include <cmath>
#include <stdexcept>

#include "gnsw/energy.hpp"
#include "gnsw/kdv.hpp"

namespace gnsw {

Profile project_sphere(const Profile& zeta, double q, const PhysicalParams& p) {
  const double m = mass(zeta, p);
  if (m == 0.0) throw std::invalid_argument("project_sphere: zero profile");
  if (!(q > 0.0)) throw std::invalid_argument("project_sphere: q must be > 0");
  return std::sqrt(q / m) * zeta;
}

double lagrange_multiplier(const Profile& zeta, const PhysicalParams& p,
                           const MultiplierSpec& F1, const MultiplierSpec& F2) {
  const EnergyBreakdown b = energy_parts(zeta, p, F1, F2);
  if (b.mass == 0.0) throw std::invalid_argument("lagrange_multiplier: zero profile");
  return -b.pairing / (2.0 * b.mass);
}

namespace {

// Mass-q bump of the long-wave shape (and sign): the starting iterate.
Profile initial_bump(const Grid& g, double q, const PhysicalParams& p) {
  const KdVReference ref = kdv_reference(p);
  const double s = std::cbrt(q);
  const double amp = s * s * ref.amplitude;
  const double kappa = ref.decay_kappa * s;
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double sech = 1.0 / std::cosh(kappa * g.node(j));
    v[j] = amp * sech * sech;
  }
  return project_sphere(Profile(g, std::move(v)), q, p);
}

}  // namespace

MinimizeResult minimize(const Grid& g, double q, const PhysicalParams& p,
                        const MultiplierSpec& F1, const MultiplierSpec& F2,
                        const MinimizeOptions& opts) {
  p.validate();
  if (!(q > 0.0)) throw std::invalid_argument("minimize: q must be > 0");
  if (!(opts.nu > 0.5)) throw std::invalid_argument("minimize: need nu > 1/2");

  const PenaltyConfig pen{opts.R > 0.0 ? opts.R : 10.0 * std::sqrt(q)};
  const double nu = opts.nu;
  auto lam2nu = [nu](double k) { return std::pow(1.0 + k * k, nu); };

  MinimizeResult out;
  out.q = q;

  Profile zeta = initial_bump(g, q, p);

  // objective = E + rho(||.||_{H^nu}^2); throws std::domain_error on
  // cavitation or on leaving the constraint ball.
  auto objective = [&](const Profile& z, double* penalty_value) {
    const double t = hs_norm(z, nu);
    const auto [rho, drho] = penalty(t * t, pen);
    (void)drho;
    if (penalty_value) *penalty_value = rho;
    return energy(z, p, F1, F2) + rho;
  };

  double pen_value = 0.0;
  double obj;
  try {
    obj = objective(zeta, &pen_value);
  } catch (const std::domain_error& e) {
    out.converged = false;
    out.stop_reason = std::string("initial iterate infeasible: ") + e.what();
    out.profile = zeta;
    out.q = mass(zeta, p);
    return out;
  }

  for (long iter = 0; iter < opts.max_iterations; ++iter) {
    const double t = hs_norm(zeta, nu);
    double rho, drho;
    try {
      std::tie(rho, drho) = penalty(t * t, pen);
    } catch (const std::domain_error&) {
      out.stop_reason = "iterate left the constraint ball";
      break;
    }
    Profile grad = energy_gradient(zeta, p, F1, F2);
    if (drho != 0.0) grad = grad + (2.0 * drho) * apply_even_symbol(zeta, lam2nu);

    const double nz2 = hs_norm(zeta, 0.0) * hs_norm(zeta, 0.0);
    const double gz = inner(grad, zeta);
    const Profile gt = grad - (gz / nz2) * zeta;
    const double gtn = gt.max_abs();
    const double value = obj - rho;

    if (opts.record_trace)
      out.trace.push_back({static_cast<double>(iter), obj, gtn, rho});

    if (gtn < opts.tol * (1.0 + std::abs(value))) {
      out.converged = true;
      out.stop_reason = "stationary";
      out.iterations = iter;
      break;
    }

    const double gt2 = inner(gt, gt);
    double s = 1.0 / (1.0 + hs_norm(grad, 0.0));
    bool accepted = false;
    Profile cand;
    double cand_obj = 0.0, cand_pen = 0.0;
    while (s > 1e-18) {
      try {
        cand = project_sphere(zeta - s * gt, q, p);
        cand_obj = objective(cand, &cand_pen);
        if (cand_obj <= obj - opts.armijo * s * gt2) {
          accepted = true;
          break;
        }
      } catch (const std::domain_error&) {
        // cavitating or ball-leaving trial: treat as insufficient decrease
      }
      s *= opts.backtrack;
    }
    if (!accepted) {
      out.stop_reason = "line search stalled";
      out.iterations = iter;
      break;
    }
    zeta = cand;
    obj = cand_obj;
    pen_value = cand_pen;
    out.iterations = iter + 1;
  }
  if (out.stop_reason.empty()) out.stop_reason = "iteration budget exhausted";

  // Multiplier and stationarity residual at the final iterate.
  const double t = hs_norm(zeta, nu);
  const auto [rho, drho] = penalty(t * t, pen);
  Profile grad = energy_gradient(zeta, p, F1, F2);
  if (drho != 0.0) grad = grad + (2.0 * drho) * apply_even_symbol(zeta, lam2nu);
  out.alpha = -inner(grad, zeta) / (2.0 * q);
  const Profile el = grad + (2.0 * out.alpha * (p.gamma + p.delta)) * zeta;
  out.el_residual = el.max_abs();
  out.penalty_active = t * t > pen.R * pen.R;
  out.value = energy(zeta, p, F1, F2);
  out.profile = zeta;
  out.q = mass(zeta, p);
  return out;
}

}  // namespace gnsw
