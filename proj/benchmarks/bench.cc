// Microbenchmarks for the hot paths: spectral transforms, operator
// applications, and a small end-to-end Newton solve.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gnsw/energy.hpp"
#include "gnsw/newton.hpp"
#include "gnsw/operators.hpp"

namespace {

const gnsw::PhysicalParams kOneLayer{0.0, 1.0, 0.0};
const gnsw::PhysicalParams kBilayer{1.0, 0.5, 0.0};

gnsw::Profile test_profile(const gnsw::Grid& g, double amp) {
  std::vector<double> v(g.N);
  for (int j = 0; j < g.N; ++j) {
    double x = g.node(j);
    v[j] = amp / std::cosh(0.1 * x) / std::cosh(0.1 * x);
  }
  return gnsw::Profile(g, v);
}

void BM_fft_round_trip(benchmark::State& state) {
  gnsw::Grid g(200.0, static_cast<int>(state.range(0)));
  gnsw::Profile u = test_profile(g, 0.1);
  for (auto _ : state) {
    gnsw::Profile v(g, u.coeffs());
    benchmark::DoNotOptimize(v.values());
  }
}
BENCHMARK(BM_fft_round_trip)->Arg(256)->Arg(512)->Arg(1024)->Arg(4096);

void BM_apply_dxF(benchmark::State& state) {
  gnsw::Grid g(200.0, static_cast<int>(state.range(0)));
  gnsw::Profile u = test_profile(g, 0.1);
  gnsw::MultiplierSpec imp = gnsw::MultiplierSpec::improved(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gnsw::apply_dxF(u, imp));
  }
}
BENCHMARK(BM_apply_dxF)->Arg(256)->Arg(1024);

void BM_a_op(benchmark::State& state) {
  gnsw::Grid g(200.0, static_cast<int>(state.range(0)));
  gnsw::Profile zeta = test_profile(g, 0.1);
  gnsw::Profile w = test_profile(g, 0.05);
  gnsw::MultiplierSpec imp = gnsw::MultiplierSpec::improved(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gnsw::a_op(zeta, w, kBilayer, imp, imp));
  }
}
BENCHMARK(BM_a_op)->Arg(256)->Arg(1024);

void BM_tw_residual(benchmark::State& state) {
  gnsw::Grid g(200.0, static_cast<int>(state.range(0)));
  gnsw::Profile zeta = test_profile(g, 0.1);
  gnsw::MultiplierSpec id = gnsw::MultiplierSpec::identity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gnsw::tw_residual(zeta, 1.05, kOneLayer, id, id));
  }
}
BENCHMARK(BM_tw_residual)->Arg(256)->Arg(1024);

void BM_energy_gradient(benchmark::State& state) {
  gnsw::Grid g(200.0, static_cast<int>(state.range(0)));
  gnsw::Profile zeta = test_profile(g, 0.1);
  gnsw::MultiplierSpec imp = gnsw::MultiplierSpec::improved(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gnsw::energy_gradient(zeta, kBilayer, imp, imp));
  }
}
BENCHMARK(BM_energy_gradient)->Arg(256)->Arg(1024);

void BM_newton_solve(benchmark::State& state) {
  gnsw::Grid g = gnsw::default_grid(1.05, kOneLayer, 256);
  gnsw::MultiplierSpec id = gnsw::MultiplierSpec::identity();
  gnsw::Profile guess = gnsw::kdv_guess(1.05, kOneLayer, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gnsw::newton_solve(guess, 1.05, kOneLayer, id, id));
  }
}
BENCHMARK(BM_newton_solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
