#include "gnsw/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gnsw {

double eval_identity(double /*k*/) { return 1.0; }

double eval_improved(double k, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("eval_improved: depth must be > 0");
  const double y = std::abs(k) * d;
  if (y < 1e-3) return 1.0 - y * y / 30.0 + 11.0 * y * y * y * y / 4200.0;
  const double t = std::tanh(y);
  double ymt;  // y - tanh(y) without cancellation
  if (y < 0.1) {
    const double y2 = y * y;
    ymt = y * y2 *
          (1.0 / 3.0 +
           y2 * (-2.0 / 15.0 +
                 y2 * (17.0 / 315.0 +
                       y2 * (-62.0 / 2835.0 +
                             y2 * (1382.0 / 155925.0 - y2 * 21844.0 / 6081075.0)))));
  } else {
    ymt = y - t;
  }
  return std::sqrt(3.0 * ymt / (y * y * t));
}

double MultiplierSpec::operator()(double k) const {
  switch (kind) {
    case Kind::identity:
      return 1.0;
    case Kind::improved:
      return eval_improved(k, depth);
    case Kind::custom_table: {
      const double a = std::abs(k);
      if (a <= table_k.front()) return table_F.front();
      if (a >= table_k.back()) return table_F.back();
      auto it = std::upper_bound(table_k.begin(), table_k.end(), a);
      const size_t i = static_cast<size_t>(it - table_k.begin());
      const double t = (a - table_k[i - 1]) / (table_k[i] - table_k[i - 1]);
      return (1.0 - t) * table_F[i - 1] + t * table_F[i];
    }
  }
  return 1.0;
}

MultiplierSpec MultiplierSpec::identity() {
  return MultiplierSpec{Kind::identity, 1.0, 0.0, {}, {}, false};
}

MultiplierSpec MultiplierSpec::improved(double depth) {
  if (!(depth > 0.0)) throw std::invalid_argument("improved multiplier: depth must be > 0");
  return MultiplierSpec{Kind::improved, depth, 0.5, {}, {}, false};
}

MultiplierSpec MultiplierSpec::custom(std::vector<double> k, std::vector<double> F,
                                      double theta) {
  if (k.size() != F.size() || k.size() < 2)
    throw std::invalid_argument("custom multiplier: need matching k,F columns (>= 2 rows)");
  if (!std::is_sorted(k.begin(), k.end()))
    throw std::invalid_argument("custom multiplier: k column must be ascending");
  MultiplierSpec s;
  s.kind = Kind::custom_table;
  s.theta = theta;
  s.table_k = std::move(k);
  s.table_F = std::move(F);
  s.extrapolation_flagged = true;  // constant continuation outside the table
  return s;
}

std::string MultiplierSpec::name() const {
  switch (kind) {
    case Kind::identity: return "id";
    case Kind::improved: return "imp";
    case Kind::custom_table: return "custom";
  }
  return "?";
}

AdmissibilityReport check_admissible(const MultiplierSpec& spec, double k_max,
                                     int samples) {
  if (samples < 100) throw std::invalid_argument("check_admissible: samples >= 100");
  if (!(k_max > 10.0)) throw std::invalid_argument("check_admissible: k_max > 10");

  AdmissibilityReport rep;
  rep.k_max = k_max;
  rep.samples = samples;
  rep.theta_declared = spec.theta;

  const double dk = k_max / (samples - 1);

  // Item 1: evenness and 0 < F <= 1 on the sampled range.
  rep.even_and_bounded = true;
  for (int i = 0; i < samples; ++i) {
    const double k = i * dk;
    const double f = spec(k);
    if (!(f > 0.0) || f > 1.0 + 1e-15 || f != spec(-k)) {
      rep.even_and_bounded = false;
      break;
    }
  }

  // Item 2: F(0) = 1 and vanishing slope at 0 (symmetric difference).
  const double h = 1e-4;
  rep.slope_at_zero = (spec(h) - spec(-h)) / (2.0 * h);
  rep.normalized_at_zero =
      std::abs(spec(0.0) - 1.0) < 1e-12 && std::abs(rep.slope_at_zero) < 1e-6;

  // Item 3 (informational): windowed L^2 norm of the second derivative of
  // k F(k), by central second differences.
  double acc = 0.0;
  for (int i = 1; i < samples - 1; ++i) {
    const double km = (i - 1) * dk, k0 = i * dk, kp = (i + 1) * dk;
    const double d2 = (kp * spec(kp) - 2.0 * k0 * spec(k0) + km * spec(km)) / (dk * dk);
    acc += d2 * d2 * dk;
  }
  rep.kF_curvature_l2 = std::sqrt(acc);

  // Item 4: decay exponent by log-log regression over the largest sampled
  // decade, and sandwich constants on all samples with k >= 1.
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < samples; ++i) {
      const double k = i * dk;
      if (k < k_max / 10.0) continue;
      const double x = std::log(1.0 + k), y = std::log(spec(k));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++n;
    }
    rep.theta_fit = n > 1 ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    rep.theta_consistent = std::abs(rep.theta_fit - spec.theta) < 0.05;

    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double k = i * dk;
      const double r = spec(k) * std::pow(1.0 + k, spec.theta);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    rep.c_minus = lo;
    rep.c_plus = hi;
  }

  rep.pass = rep.even_and_bounded && rep.normalized_at_zero && rep.theta_consistent &&
             rep.c_minus > 0.0 && std::isfinite(rep.c_plus);
  return rep;
}

}  // namespace gnsw
