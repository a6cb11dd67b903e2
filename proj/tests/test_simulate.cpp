#include <doctest.h>

#include <cmath>
#include <vector>

#include "dporo/errors.hpp"
#include "dporo/modal.hpp"
#include "dporo/simulate.hpp"
#include "oracles.hpp"

using namespace dporo;

namespace {

ModeData broadband(int upto) {
  ModeData d;
  for (int n = 1; n <= upto; ++n) {
    const double w = std::pow(0.5, n - 1);
    d.u0.push_back({n, w});
    d.u1.push_back({n, 0.3 * w});
    d.phi0.push_back({n, 0.2 * w});
    d.phi1.push_back({n, -0.1 * w});
    d.psi0.push_back({n, 0.15 * w});
    d.psi1.push_back({n, 0.05 * w});
  }
  d.phi0_mean = 0.4;
  d.psi1_mean = -0.2;
  return d;
}

} // namespace

TEST_CASE("mode amplitudes land in their slots") {
  ModeData d;
  d.u0.push_back({3, 2.5});
  d.phi1.push_back({1, -1.0});
  d.psi0.push_back({2, 0.5});
  d.phi0_mean = 7.0;
  const SpectralState s =
      project_initial(d, oracle::p_exp(), BoundaryKind::MixedA3, 4);
  CHECK(s.num_modes() == 4);
  CHECK(s.modes[2][0] == 2.5);
  CHECK(s.modes[0][3] == -1.0);
  CHECK(s.modes[1][4] == 0.5);
  CHECK(s.mean[0] == 7.0);
  CHECK(s.t == 0.0);
}

TEST_CASE("mode data beyond the truncation is rejected") {
  ModeData d;
  d.u0.push_back({5, 1.0});
  CHECK_THROWS_AS(
      (void)project_initial(d, oracle::p_exp(), BoundaryKind::MixedA3, 4),
      Error);
}

TEST_CASE("mean data under MixedA2 is rejected") {
  ModeData d;
  d.phi0_mean = 1.0;
  CHECK_THROWS_AS(
      (void)project_initial(d, oracle::p_exp(), BoundaryKind::MixedA2, 4),
      BcMismatchError);
}

TEST_CASE("grid projection inverts the trigonometric expansion") {
  const MaterialParams p = oracle::p_case2();
  const int N = 6;
  const SpectralState want =
      project_initial(broadband(N), p, BoundaryKind::MixedA3, N);

  const int samples = 4 * N + 1;
  GridData g;
  for (int i = 0; i < samples; ++i) {
    const double x = p.length * i / (samples - 1);
    const oracle::Fields f = oracle::eval_state(want, p, x);
    g.u0.push_back(f.u);
    g.u1.push_back(f.ut);
    g.phi0.push_back(f.phi);
    g.phi1.push_back(f.phit);
    g.psi0.push_back(f.psi);
    g.psi1.push_back(f.psit);
  }
  const SpectralState got = project_initial(g, p, BoundaryKind::MixedA3, N);
  REQUIRE(got.num_modes() == N);
  for (int n = 0; n < N; ++n)
    for (int c = 0; c < 6; ++c)
      CHECK(got.modes[static_cast<size_t>(n)][static_cast<size_t>(c)] ==
            doctest::Approx(want.modes[static_cast<size_t>(n)][static_cast<size_t>(c)])
                .epsilon(1e-10));
  for (int c = 0; c < 4; ++c)
    CHECK(got.mean[static_cast<size_t>(c)] ==
          doctest::Approx(want.mean[static_cast<size_t>(c)]).epsilon(1e-10));
}

TEST_CASE("coarse grids are rejected") {
  GridData g;
  g.u0.assign(16, 0.0);  // needs 4*6+1 = 25 samples
  CHECK_THROWS_AS(
      (void)project_initial(g, oracle::p_exp(), BoundaryKind::MixedA3, 6),
      GridTooCoarseError);
}

TEST_CASE("nonzero-mean u data under MixedA2 is rejected") {
  const MaterialParams p = oracle::p_exp();
  const int N = 4;
  const int samples = 4 * N + 1;
  GridData g;
  for (int i = 0; i < samples; ++i) g.u0.push_back(1.0);  // pure mean
  CHECK_THROWS_AS((void)project_initial(g, p, BoundaryKind::MixedA2, N),
                  MeanViolationError);

  GridData ok;
  for (int i = 0; i < samples; ++i) {
    const double x = p.length * i / (samples - 1);
    ok.u0.push_back(std::cos(2.0 * x));  // zero-mean cosine mode
  }
  const SpectralState s = project_initial(ok, p, BoundaryKind::MixedA2, N);
  CHECK(s.modes[1][0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Parseval energy matches dense quadrature on both boundary kinds") {
  for (const BoundaryKind bc : {BoundaryKind::MixedA2, BoundaryKind::MixedA3}) {
    const MaterialParams p = oracle::p_case2();
    ModeData d = broadband(5);
    if (bc == BoundaryKind::MixedA2) {
      d.phi0_mean = 0.0;
      d.psi1_mean = 0.0;
    }
    const SpectralState s = project_initial(d, p, bc, 5);
    const EnergyBreakdown e = energy(p, s);
    const double ref = oracle::quadrature_energy(s, p);
    CHECK(e.total == doctest::Approx(ref).epsilon(1e-9));
    CHECK(e.total ==
          doctest::Approx(e.kinetic + e.elastic + e.porous_grad +
                          e.porous_restoring + e.cross));
  }
}

TEST_CASE("dissipation rate matches dense quadrature") {
  MaterialParams p = oracle::p_case2();
  p.tau2 = 0.2;
  p.tau3 = 0.1;
  const SpectralState s =
      project_initial(broadband(5), p, BoundaryKind::MixedA3, 5);
  CHECK(dissipation_rate(p, s) ==
        doctest::Approx(oracle::quadrature_dissipation(s, p)).epsilon(1e-9));
}

TEST_CASE("energy is conserved without damping") {
  MaterialParams p = oracle::p_case1();
  p.tau1 = p.tau2 = p.tau3 = p.tau4 = 0.0;
  const SpectralState s0 =
      project_initial(broadband(8), p, BoundaryKind::MixedA3, 8);
  const EnergyTrace trace = energy_trace(p, s0, 5.0, 1e-3);
  const double e0 = trace.samples.front().E;
  for (const EnergySample& s : trace.samples)
    CHECK(std::abs(s.E - e0) <= 1e-9 * e0);
}

TEST_CASE("energy balance closes under damping") {
  const MaterialParams p = oracle::p_case1();
  const SpectralState s0 =
      project_initial(broadband(8), p, BoundaryKind::MixedA3, 8);
  const EnergyTrace trace = energy_trace(p, s0, 5.0, 1e-3);
  const DissipationReport rep = dissipation_check(trace);
  CHECK(rep.max_pair_residual < 1e-9);
  CHECK(rep.cumulative_residual < 1e-7);
  CHECK(trace.samples.back().E < trace.samples.front().E);
  for (const EnergySample& s : trace.samples) CHECK(s.D <= 0.0);
}

TEST_CASE("exact propagation matches the RK4 stepper") {
  const MaterialParams p = oracle::p_exp();
  const SpectralState s0 =
      project_initial(broadband(8), p, BoundaryKind::MixedA3, 8);
  const auto exact = evolve(p, s0, 2.0, 1e-3, Integrator::Exact);
  const auto rk4 = evolve(p, s0, 2.0, 1e-3, Integrator::RK4);
  REQUIRE(exact.size() == rk4.size());
  const SpectralState& a = exact.back();
  const SpectralState& b = rk4.back();
  for (int n = 0; n < a.num_modes(); ++n)
    for (int c = 0; c < 6; ++c)
      CHECK(std::abs(a.modes[static_cast<size_t>(n)][static_cast<size_t>(c)] -
                     b.modes[static_cast<size_t>(n)][static_cast<size_t>(c)]) < 5e-9);
  for (int c = 0; c < 4; ++c)
    CHECK(std::abs(a.mean[static_cast<size_t>(c)] -
                   b.mean[static_cast<size_t>(c)]) < 5e-9);
}

TEST_CASE("exact propagation matches an independent RK4 oracle per mode") {
  const MaterialParams p = oracle::p_case3();
  const SpectralState s0 =
      project_initial(broadband(3), p, BoundaryKind::MixedA3, 3);
  const auto states = evolve(p, s0, 1.0, 1e-2, Integrator::Exact);

  const ModeMatrix m = assemble_mode_matrix(p, BoundaryKind::MixedA3, 2);
  std::vector<double> gen(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) gen[static_cast<size_t>(i * 6 + j)] = m.at(i, j);
  std::vector<double> y(s0.modes[1].begin(), s0.modes[1].end());
  y = oracle::rk4_vec(gen, 6, y, 1.0, 5000);
  for (int c = 0; c < 6; ++c)
    CHECK(states.back().modes[1][static_cast<size_t>(c)] ==
          doctest::Approx(y[static_cast<size_t>(c)]).epsilon(1e-9));
}

TEST_CASE("trace sampling agrees between streaming and stored trajectories") {
  const MaterialParams p = oracle::p_case2();
  const SpectralState s0 =
      project_initial(broadband(4), p, BoundaryKind::MixedA3, 4);
  const EnergyTrace stream = energy_trace(p, s0, 1.0, 1e-2);
  const auto states = evolve(p, s0, 1.0, 1e-2, Integrator::Exact);
  const EnergyTrace stored = trace_from_states(p, states, 1e-2);
  REQUIRE(stream.samples.size() == stored.samples.size());
  for (size_t i = 0; i < stream.samples.size(); ++i) {
    CHECK(stream.samples[i].t == stored.samples[i].t);
    CHECK(stream.samples[i].E == doctest::Approx(stored.samples[i].E));
    CHECK(stream.samples[i].balance_residual ==
          doctest::Approx(stored.samples[i].balance_residual));
  }
}

TEST_CASE("decay fit recovers a synthetic exponential") {
  EnergyTrace trace;
  trace.dt = 0.01;
  for (int i = 0; i <= 1000; ++i) {
    EnergySample s;
    s.t = i * trace.dt;
    s.E = 3.0 * std::exp(-0.7 * s.t);
    trace.samples.push_back(s);
  }
  const DecayFit fit = fit_decay(trace, 0.6);
  CHECK(fit.xi == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(fit.amplitude == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.t0 == doctest::Approx(4.0));
  CHECK(fit.t1 == doctest::Approx(10.0));
}

TEST_CASE("decay fit rejects nonpositive energies in the window") {
  EnergyTrace trace;
  trace.dt = 0.1;
  for (int i = 0; i <= 100; ++i) {
    EnergySample s;
    s.t = i * trace.dt;
    s.E = 1.0 - i * 0.011;  // goes negative inside the trailing window
    trace.samples.push_back(s);
  }
  CHECK_THROWS_AS((void)fit_decay(trace, 0.6), NonPositiveEnergyError);
}

TEST_CASE("zero state has zero energy and dissipation") {
  ModeData d;
  const SpectralState s =
      project_initial(d, oracle::p_exp(), BoundaryKind::MixedA3, 3);
  CHECK(energy(oracle::p_exp(), s).total == 0.0);
  CHECK(dissipation_rate(oracle::p_exp(), s) == 0.0);
}
