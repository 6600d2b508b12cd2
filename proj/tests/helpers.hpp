#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gnsw/grid.hpp"

namespace gnsw::testutil {

// Smooth random profile from a handful of low Fourier modes, scaled to a
// prescribed max-norm. even = true drops the sine terms.
inline Profile random_profile(const Grid& g, std::mt19937& rng, double amp,
                              bool even = false, int modes = 8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.N, 0.0);
  for (int m = 1; m <= modes; ++m) {
    const double a = u(rng) * std::exp(-0.4 * m);
    const double b = even ? 0.0 : u(rng) * std::exp(-0.4 * m);
    for (int j = 0; j < g.N; ++j) {
      const double ph = 2.0 * M_PI * m * g.node(j) / g.P;
      v[j] += a * std::cos(ph) + b * std::sin(ph);
    }
  }
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  if (mx > 0.0)
    for (double& x : v) x *= amp / mx;
  return Profile(g, v);
}

inline Profile cosine(const Grid& g, int m, double a = 1.0) {
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j)
    v[j] = a * std::cos(2.0 * M_PI * m * g.node(j) / g.P);
  return Profile(g, v);
}

inline double max_diff(const Profile& a, const Profile& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace gnsw::testutil
