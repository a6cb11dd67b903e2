// Micro-benchmarks for the hot paths: dense 6x6 kernels, per-mode spectra,
// full scans, time stepping and resolvent solves.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>

#include "dporo/linalg.hpp"
#include "dporo/modal.hpp"
#include "dporo/resolvent.hpp"
#include "dporo/simulate.hpp"

namespace {

using namespace dporo;
using linalg::CMat;

MaterialParams coupled_params() {
  MaterialParams p;
  p.rho = 1;
  p.mu = 1;
  p.b = 1;
  p.d = 1;
  p.kappa1 = 1;
  p.kappa2 = 1;
  p.alpha = 1.5;
  p.beta = 0.5;
  p.gamma = 1.5;
  p.alpha1 = 3;
  p.alpha2 = 3;
  p.alpha3 = 0;
  p.tau1 = 1;
  p.tau2 = 0;
  p.tau3 = 0;
  p.tau4 = 1;
  return p;
}

CMat random6(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  CMat m(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = {u(rng), u(rng)};
  return m;
}

void BM_Expm6(benchmark::State& state) {
  const CMat m = random6(7);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::expm(m, 1e-3));
}
BENCHMARK(BM_Expm6);

void BM_Eigenvalues6(benchmark::State& state) {
  const CMat m = random6(11);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::eigenvalues(m));
}
BENCHMARK(BM_Eigenvalues6);

void BM_ModeSpectrum(benchmark::State& state) {
  const MaterialParams p = coupled_params();
  for (auto _ : state)
    benchmark::DoNotOptimize(mode_spectrum(p, BoundaryKind::MixedA3, 40));
}
BENCHMARK(BM_ModeSpectrum);

void BM_AbscissaScan(benchmark::State& state) {
  const MaterialParams p = coupled_params();
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(abscissa_scan(p, BoundaryKind::MixedA3, n_max));
}
BENCHMARK(BM_AbscissaScan)->Arg(50)->Arg(200);

void BM_EvolveStep(benchmark::State& state) {
  const MaterialParams p = coupled_params();
  ModeData data;
  for (int n = 1; n <= 16; ++n) data.u0.push_back({n, 1.0 / n});
  const SpectralState s0 = project_initial(data, p, BoundaryKind::MixedA3, 16);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve(p, s0, 0.1, 1e-3, Integrator::Exact));
}
BENCHMARK(BM_EvolveStep);

void BM_ProbeSolve(benchmark::State& state) {
  const MaterialParams p = coupled_params();
  const double lambda = 64.0 * std::sqrt(p.mu / p.rho);
  for (auto _ : state) benchmark::DoNotOptimize(solve_modal(p, lambda, 64));
}
BENCHMARK(BM_ProbeSolve);

} // namespace

BENCHMARK_MAIN();
