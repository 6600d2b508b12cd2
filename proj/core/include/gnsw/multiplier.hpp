#pragma once

#include <string>
#include <vector>

namespace gnsw {

// F(k) == 1: the unmodified model.
double eval_identity(double k);

// The improved-dispersion symbol
//   F(k) = sqrt(3/(y tanh y) - 3/y^2),  y = |k| d,
// for a layer of depth d (layer 1: d = 1, layer 2: d = 1/delta). The k -> 0
// singularity is removable; |kd| < 1e-3 uses the even Taylor series
// 1 - (kd)^2/30 + 11 (kd)^4/4200. Inside the closed form, y - tanh y is
// evaluated by series for small y: the naive difference loses ~6 digits at
// y ~ 1e-3, which would break the required 1e-12 branch continuity.
double eval_improved(double k, double d);

// A Fourier symbol together with its declared decay exponent theta
// (F ~ C (1+|k|)^{-theta} at large k; identity: theta = 0, improved:
// theta = 1/2). Custom tables are linearly interpolated and held constant
// beyond the tabulated range (extrapolation_flagged is set when such a spec
// is built, since nothing certifies the tail).
struct MultiplierSpec {
  enum class Kind { identity, improved, custom_table };

  Kind kind = Kind::identity;
  double depth = 1.0;   // improved only
  double theta = 0.0;
  std::vector<double> table_k, table_F;  // custom only; table_k ascending
  bool extrapolation_flagged = false;

  double operator()(double k) const;

  static MultiplierSpec identity();
  static MultiplierSpec improved(double depth);
  static MultiplierSpec custom(std::vector<double> k, std::vector<double> F,
                               double theta);
  std::string name() const;
};

// Per-item result of sampling a symbol against the admissibility conditions:
// evenness and 0 < F <= 1; normalization F(0) = 1 with flat slope; a
// finite-window L^2 estimate of the second derivative of k F(k)
// (informational — a finite window cannot certify the tail); and the decay
// sandwich C_-(1+|k|)^{-theta} <= F <= C_+(1+|k|)^{-theta} with theta
// re-fitted on the largest sampled decade.
struct AdmissibilityReport {
  bool even_and_bounded = false;
  bool normalized_at_zero = false;
  double slope_at_zero = 0.0;      // symmetric-difference estimate of F'(0)
  double kF_curvature_l2 = 0.0;    // windowed L^2 norm of (kF)''
  double theta_fit = 0.0;
  double theta_declared = 0.0;
  bool theta_consistent = false;   // |theta_fit - theta_declared| < 0.05
  double c_minus = 0.0, c_plus = 0.0;
  double k_max = 0.0;
  int samples = 0;
  bool pass = false;               // items 1, 2 and 4 together
};

// Samples the symbol on [0, k_max] (and mirrored) and fills the report.
// Requires samples >= 100 and k_max > 10.
AdmissibilityReport check_admissible(const MultiplierSpec& spec, double k_max,
                                     int samples);

}  // namespace gnsw
