#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace gnsw {

// Periodic collocation grid on [-P/2, P/2) with N equispaced nodes
// x_j = -P/2 + j*P/N and wavenumbers k_m = 2*pi*m/P, m = -N/2+1, ..., N/2
// (real-transform layout: only m = 0..N/2 is stored, the Nyquist mode is
// purely real).
struct Grid {
  double P = 0.0;
  int N = 0;

  Grid() = default;
  Grid(double period, int nodes);  // validates: P > 0, N even, N >= 8

  double dx() const { return P / N; }
  double node(int j) const { return -0.5 * P + j * dx(); }
  double wavenumber(int m) const { return 2.0 * M_PI * m / P; }
  int n_modes() const { return N / 2 + 1; }
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

// A real periodic profile held in both nodal and Fourier form. The two
// representations are computed from one another at construction and stay
// consistent for the lifetime of the object; Profiles are immutable and safe
// to read concurrently.
//
// Coefficient normalization: coeffs()[m] = (1/sqrt(P)) * int zeta(x) e^{-i k_m x} dx
// (discretized by the trapezoid rule), so that
// ||u||_{H^s}^2 = sum_m (1 + k_m^2)^s |u_m|^2 over the full mode set.
class Profile {
 public:
  Profile() = default;
  explicit Profile(const Grid& g);                         // zero profile
  Profile(const Grid& g, std::vector<double> values);      // nodal data
  Profile(const Grid& g, const std::vector<std::complex<double>>& coeffs);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  double operator[](int j) const { return values_[j]; }
  int size() const { return grid_.N; }

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<std::complex<double>> coeffs_;  // size N/2 + 1
};

// Discrete H^s norm via the coefficient sum; s = 0 matches trapezoid
// quadrature of u^2 to rounding (Parseval).
double hs_norm(const Profile& u, double s);

// Trapezoid quadrature over one period: (P/N) * sum of nodal values.
double integrate(const Profile& u);

// L^2 inner product <u, v> by trapezoid quadrature.
double inner(const Profile& u, const Profile& v);

// u(. - x0) by coefficient phases. The Nyquist coefficient is multiplied by
// cos(k_{N/2} x0), the unique real choice consistent with the cosine
// representative of that mode; profiles with Nyquist content therefore shift
// only approximately (band-limited profiles shift exactly).
Profile fourier_shift(const Profile& u, double x0);

struct ResampleInfo {
  double folded_energy_fraction = 0.0;  // |coeff|^2 aliased when downsampling
  bool aliased = false;
};

// Trigonometric interpolation onto a grid with the same period and a
// different N. Exact on trig polynomials representable on both grids;
// downsampling below the bandwidth alias-folds high modes (reported via
// info, not an error).
Profile resample(const Profile& u, const Grid& to, ResampleInfo* info = nullptr);

// Fraction of coefficient energy in the last octave m in [N/4, N/2]; the
// resolution diagnostic (adequately resolved smooth profiles: < 1e-24).
double tail_energy_fraction(const Profile& u);

// Coefficient-space multiplication by a real even symbol f(|k|).
Profile apply_even_symbol(const Profile& u, const std::function<double(double)>& f);

// Coefficient-space multiplication by i*k*F(|k|) (the F-modified derivative).
// The Nyquist mode is annihilated, as required for a real odd symbol.
Profile apply_dx_symbol(const Profile& u, const std::function<double(double)>& F);

// Even part about x = 0: (u(x) + u(-x))/2, exact at the nodes.
Profile symmetrize(const Profile& u);

// Nodal arithmetic (each result re-transforms; costs one FFT).
Profile operator+(const Profile& a, const Profile& b);
Profile operator-(const Profile& a, const Profile& b);
Profile operator*(double a, const Profile& u);

}  // namespace gnsw
