#include "gnsw/grid.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gnsw {

namespace {

// FFTW plans and workspace for one transform size. Plan creation is not
// thread-safe, so it is serialized by a global mutex; execution happens on
// thread-local buffers, which keeps concurrent transforms on distinct
// Profiles independent.
class FftEngine {
 public:
  explicit FftEngine(int N) : N_(N) {
    real_ = fftw_alloc_real(N);
    cplx_ = fftw_alloc_complex(N / 2 + 1);
    static std::mutex planner_mutex;
    std::lock_guard<std::mutex> lock(planner_mutex);
    fwd_ = fftw_plan_dft_r2c_1d(N, real_, cplx_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(N, cplx_, real_, FFTW_ESTIMATE);
  }
  ~FftEngine() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(cplx_);
  }
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  // Unnormalized r2c: out[m] = sum_j in[j] e^{-2 pi i j m / N}.
  void forward(const double* in, std::complex<double>* out) {
    std::memcpy(real_, in, sizeof(double) * N_);
    fftw_execute(fwd_);
    std::memcpy(out, cplx_, sizeof(fftw_complex) * (N_ / 2 + 1));
  }
  // Unnormalized c2r, the inverse of forward up to a factor N.
  void inverse(const std::complex<double>* in, double* out) {
    std::memcpy(cplx_, in, sizeof(fftw_complex) * (N_ / 2 + 1));
    fftw_execute(bwd_);
    std::memcpy(out, real_, sizeof(double) * N_);
  }

  static FftEngine& for_size(int N) {
    thread_local std::map<int, std::unique_ptr<FftEngine>> cache;
    auto& slot = cache[N];
    if (!slot) slot = std::make_unique<FftEngine>(N);
    return *slot;
  }

 private:
  int N_;
  double* real_;
  fftw_complex* cplx_;
  fftw_plan fwd_, bwd_;
};

}  // namespace

Grid::Grid(double period, int nodes) : P(period), N(nodes) {
  if (!(P > 0.0)) throw std::invalid_argument("grid period must be positive");
  if (N < 8 || N % 2 != 0)
    throw std::invalid_argument("grid size must be even and >= 8");
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(N);
  for (int j = 0; j < N; ++j) x[j] = node(j);
  return x;
}

Profile::Profile(const Grid& g) : grid_(g), values_(g.N, 0.0), coeffs_(g.n_modes(), 0.0) {}

Profile::Profile(const Grid& g, std::vector<double> values)
    : grid_(g), values_(std::move(values)), coeffs_(g.n_modes()) {
  if (static_cast<int>(values_.size()) != g.N)
    throw std::invalid_argument("profile values must have exactly N entries");
  FftEngine::for_size(g.N).forward(values_.data(), coeffs_.data());
  // Normalize to the 1/sqrt(P) convention and shift the phase origin to
  // x_0 = -P/2: e^{i k_m P/2} = (-1)^m.
  const double scale = std::sqrt(g.P) / g.N;
  for (int m = 0; m < g.n_modes(); ++m)
    coeffs_[m] *= (m % 2 == 0) ? scale : -scale;
}

Profile::Profile(const Grid& g, const std::vector<std::complex<double>>& coeffs)
    : grid_(g), values_(g.N), coeffs_(coeffs) {
  if (static_cast<int>(coeffs_.size()) != g.n_modes())
    throw std::invalid_argument("profile coeffs must have exactly N/2+1 entries");
  // Realness requires the mean and Nyquist coefficients to be real.
  coeffs_[0] = coeffs_[0].real();
  coeffs_[g.N / 2] = coeffs_[g.N / 2].real();
  std::vector<std::complex<double>> raw(coeffs_);
  const double scale = 1.0 / std::sqrt(g.P);
  for (int m = 0; m < g.n_modes(); ++m)
    raw[m] *= (m % 2 == 0) ? scale : -scale;
  FftEngine::for_size(g.N).inverse(raw.data(), values_.data());
}

double Profile::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Weight of mode m in the full-spectrum sum: interior modes represent a
// conjugate pair, the mean and Nyquist modes stand alone.
inline double mode_weight(int m, int N) { return (m == 0 || m == N / 2) ? 1.0 : 2.0; }

}  // namespace

double hs_norm(const Profile& u, double s) {
  const Grid& g = u.grid();
  double acc = 0.0;
  for (int m = 0; m < g.n_modes(); ++m) {
    const double k = g.wavenumber(m);
    acc += mode_weight(m, g.N) * std::pow(1.0 + k * k, s) * std::norm(u.coeffs()[m]);
  }
  return std::sqrt(acc);
}

double integrate(const Profile& u) {
  double acc = 0.0;
  for (double v : u.values()) acc += v;
  return acc * u.grid().dx();
}

double inner(const Profile& u, const Profile& v) {
  if (u.grid() != v.grid()) throw std::invalid_argument("inner: grid mismatch");
  double acc = 0.0;
  for (int j = 0; j < u.size(); ++j) acc += u[j] * v[j];
  return acc * u.grid().dx();
}

Profile fourier_shift(const Profile& u, double x0) {
  const Grid& g = u.grid();
  std::vector<std::complex<double>> c(u.coeffs());
  for (int m = 1; m < g.N / 2; ++m) {
    const double ph = -g.wavenumber(m) * x0;
    c[m] *= std::complex<double>(std::cos(ph), std::sin(ph));
  }
  c[g.N / 2] *= std::cos(g.wavenumber(g.N / 2) * x0);
  return Profile(g, c);
}

Profile resample(const Profile& u, const Grid& to, ResampleInfo* info) {
  const Grid& from = u.grid();
  if (std::abs(from.P - to.P) > 1e-12 * from.P)
    throw std::invalid_argument("resample requires matching periods");
  const int N1 = from.N, N2 = to.N;
  std::vector<std::complex<double>> c(to.n_modes(), 0.0);
  double folded = 0.0;
  double total = 0.0;
  for (int m = 0; m < from.n_modes(); ++m)
    total += mode_weight(m, N1) * std::norm(u.coeffs()[m]);

  if (N2 >= N1) {
    for (int m = 0; m <= N1 / 2; ++m) c[m] = u.coeffs()[m];
    // The old Nyquist cosine becomes an interior conjugate pair at +-N1/2,
    // each member carrying half the coefficient.
    if (N2 > N1) c[N1 / 2] *= 0.5;
  } else {
    // Alias-fold the full fine spectrum (Nyquist in cosine convention, split
    // evenly over +-N1/2) onto representatives r in (-N2/2, N2/2]. The input
    // spectrum is Hermitian, so the accumulated coarse spectrum is too; read
    // off the half-spectrum at the end.
    std::vector<std::complex<double>> d(N2, 0.0);
    auto slot = [&](long mu) -> std::complex<double>& {
      return d[static_cast<int>((mu % N2 + N2) % N2)];
    };
    for (int m = 0; m <= N1 / 2; ++m) {
      std::complex<double> v = u.coeffs()[m];
      if (m > N2 / 2) folded += mode_weight(m, N1) * std::norm(v);
      if (m == 0) {
        slot(0) += v;
      } else if (m == N1 / 2) {
        slot(m) += 0.5 * v;
        slot(-m) += 0.5 * std::conj(v);
      } else {
        slot(m) += v;
        slot(-m) += std::conj(v);
      }
    }
    for (int r = 0; r <= N2 / 2; ++r) c[r] = slot(r);
  }
  if (info) {
    info->folded_energy_fraction = total > 0.0 ? folded / total : 0.0;
    info->aliased = total > 0.0 && folded > 1e-28 * total;
  }
  return Profile(to, c);
}

double tail_energy_fraction(const Profile& u) {
  const Grid& g = u.grid();
  double total = 0.0, tail = 0.0;
  for (int m = 0; m < g.n_modes(); ++m) {
    const double e = mode_weight(m, g.N) * std::norm(u.coeffs()[m]);
    total += e;
    if (m >= g.N / 4) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

Profile apply_even_symbol(const Profile& u, const std::function<double(double)>& f) {
  const Grid& g = u.grid();
  std::vector<std::complex<double>> c(u.coeffs());
  for (int m = 0; m < g.n_modes(); ++m) c[m] *= f(std::abs(g.wavenumber(m)));
  return Profile(g, c);
}

Profile apply_dx_symbol(const Profile& u, const std::function<double(double)>& F) {
  const Grid& g = u.grid();
  std::vector<std::complex<double>> c(u.coeffs());
  for (int m = 0; m < g.N / 2; ++m) {
    const double k = g.wavenumber(m);
    c[m] *= std::complex<double>(0.0, k * F(std::abs(k)));
  }
  c[g.N / 2] = 0.0;  // odd symbol: the real Nyquist mode is annihilated
  return Profile(g, c);
}

Profile symmetrize(const Profile& u) {
  const Grid& g = u.grid();
  std::vector<double> v(g.N);
  v[0] = u[0];  // x_0 = -P/2 is its own mirror (mod P)
  for (int j = 1; j < g.N; ++j) v[j] = 0.5 * (u[j] + u[g.N - j]);
  return Profile(g, std::move(v));
}

Profile operator+(const Profile& a, const Profile& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("profile +: grid mismatch");
  std::vector<double> v(a.values());
  for (int j = 0; j < b.size(); ++j) v[j] += b[j];
  return Profile(a.grid(), std::move(v));
}

Profile operator-(const Profile& a, const Profile& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("profile -: grid mismatch");
  std::vector<double> v(a.values());
  for (int j = 0; j < b.size(); ++j) v[j] -= b[j];
  return Profile(a.grid(), std::move(v));
}

Profile operator*(double a, const Profile& u) {
  std::vector<double> v(u.values());
  for (double& x : v) x *= a;
  return Profile(u.grid(), std::move(v));
}

}  // namespace gnsw
